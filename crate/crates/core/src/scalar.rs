//! Scalar abstraction for the numeric kernels.
//!
//! All core math is generic over [`Real`], which is `f32` or `f64` in
//! practice. Concrete `f64` aliases for the main domain types live at the
//! crate root; `f64` is what the CLI and the file formats use.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar usable by every kernel in this crate.
pub trait Real:
    Float + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64` (identity for `f64`).
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to any Real")
    }

    /// Lossy conversion to `f64` (identity for `f64`).
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize converts to Real")
    }

    #[inline]
    fn of_i64(n: i64) -> Self {
        Self::from_i64(n).expect("i64 converts to Real")
    }

    /// 2^e with integer exponent.
    #[inline]
    fn exp2_i(e: i32) -> Self {
        Self::of(f64::powi(2.0, e))
    }

    #[inline]
    fn half() -> Self {
        Self::of(0.5)
    }

    #[inline]
    fn two() -> Self {
        Self::of(2.0)
    }
}

impl Real for f32 {}
impl Real for f64 {}
