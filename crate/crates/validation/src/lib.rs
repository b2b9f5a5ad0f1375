//! Holds the `acceptance` test target; nothing to export.
