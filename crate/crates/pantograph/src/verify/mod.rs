//! Embedding search and certification.
