use crate::Real;

/// dB (or dBm) to linear scale (ratio, or mW).
pub fn db_to_linear<T: Real>(x_db: T) -> T {
    T::lit(10.0).powf(x_db / T::lit(10.0))
}

pub fn linear_to_db<T: Real>(x: T) -> T {
    T::lit(10.0) * x.log10()
}
