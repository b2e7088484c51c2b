//! General glued sets (to come).
