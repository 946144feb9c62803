//! Verifiers (stub).
