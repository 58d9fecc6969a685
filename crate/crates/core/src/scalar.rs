use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real field underlying the complex scalars: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Default `(zero, norm, eq, verify)` thresholds for this precision.
    const DEFAULT_TOLERANCES: [f64; 4];

    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const DEFAULT_TOLERANCES: [f64; 4] = [1e-9, 1e-9, 1e-7, 1e-8];
}

// Single precision cannot resolve the f64 thresholds; these sit a few
// hundred ulps above f32::EPSILON.
impl Real for f32 {
    const DEFAULT_TOLERANCES: [f64; 4] = [1e-5, 1e-5, 1e-3, 1e-4];
}
