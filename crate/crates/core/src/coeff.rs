//! Scalar-ring bound for coefficient-generic types.

use std::ops::{Mul, Neg, Sub};

use num_traits::{One, Zero};

/// An exact coefficient ring.
///
/// This is the scalar bound used by [`crate::laurent::LaurentPoly`] and the
/// series iteration in [`crate::series`].  It is satisfied by the crate-level
/// [`crate::Int`] and [`crate::Rat`] aliases (and any other exact
/// `num-traits` ring with the listed operations).
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}
