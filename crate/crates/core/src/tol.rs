//! Centralized tolerance configuration.

/// Tolerances used across the library.  Defaults match the contracts the
/// test suites pin down; every CLI command accepts an override.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Coefficientwise / structural comparisons (form equality, pencil
    /// residuals, closed-form identities).
    pub structural: f64,
    /// End-to-end two-path discriminant agreement.
    pub end_to_end: f64,
    /// |Delta| relative to (max coefficient magnitude)^12 below which a
    /// cubic is declared singular.
    pub singular: f64,
    /// Minimum |det| for a Transform3 used as a coordinate change.
    pub invertibility: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: 1e-9,
            end_to_end: 1e-6,
            singular: 1e-8,
            invertibility: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn with_structural(mut self, tol: f64) -> Self {
        self.structural = tol;
        self
    }

    pub fn with_end_to_end(mut self, tol: f64) -> Self {
        self.end_to_end = tol;
        self
    }

    pub fn with_singular(mut self, tol: f64) -> Self {
        self.singular = tol;
        self
    }
}
