//! Quadratic fields (stub).
