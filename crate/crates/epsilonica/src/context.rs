use crate::error::{Error, Result};

/// Coefficient arithmetic selected for a whole computation.
///
/// Exact mode keeps every coefficient as an arbitrary-precision rational;
/// float mode uses `f64`. The two never mix inside one number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Exact,
    Float,
}

/// Global arithmetic policy: truncation depth, scalar mode, and the float
/// tolerance used by validation suites.
///
/// The depth `D` bounds the span of exponents a number may carry relative to
/// its least exponent: every stored exponent lies in `[lambda, lambda + D)`.
/// Results of inversion and analytic lifting are truncated at that window and
/// flagged; sums and products are exact whenever their support fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Context {
    depth: u32,
    mode: ScalarMode,
    float_tolerance: f64,
}

pub const DEFAULT_DEPTH: u32 = 8;
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-12;

impl Context {
    /// Builds a context. Depth must be at least 2: one order for values and
    /// one for the first-order infinitesimal part that adequality
    /// differentiation inspects.
    pub fn new(depth: u32, mode: ScalarMode) -> Result<Self> {
        if depth < 2 {
            return Err(Error::DepthTooSmall(depth));
        }
        Ok(Context {
            depth,
            mode,
            float_tolerance: DEFAULT_FLOAT_TOLERANCE,
        })
    }

    pub fn exact(depth: u32) -> Result<Self> {
        Context::new(depth, ScalarMode::Exact)
    }

    pub fn float(depth: u32) -> Result<Self> {
        Context::new(depth, ScalarMode::Float)
    }

    pub fn with_float_tolerance(mut self, tolerance: f64) -> Self {
        self.float_tolerance = tolerance;
        self
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn float_tolerance(&self) -> f64 {
        self.float_tolerance
    }
}

impl Default for Context {
    fn default() -> Self {
        Context {
            depth: DEFAULT_DEPTH,
            mode: ScalarMode::Exact,
            float_tolerance: DEFAULT_FLOAT_TOLERANCE,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_floor_enforced() {
        assert_eq!(Context::exact(1).unwrap_err(), Error::DepthTooSmall(1));
        assert_eq!(Context::exact(0).unwrap_err(), Error::DepthTooSmall(0));
        assert!(Context::exact(2).is_ok());
    }

    #[test]
    fn defaults() {
        let ctx = Context::default();
        assert_eq!(ctx.depth(), 8);
        assert_eq!(ctx.mode(), ScalarMode::Exact);
        assert_eq!(ctx.float_tolerance(), 1e-12);
    }
}
