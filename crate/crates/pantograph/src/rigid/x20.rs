//! Genus-two atlas set (to come).
