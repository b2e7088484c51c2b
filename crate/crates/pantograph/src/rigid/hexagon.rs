//! Hexagon sets (to come).
