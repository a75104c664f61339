use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub(crate) type Rat = BigRational;

pub(crate) fn rat(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn to_f64(q: &Rat) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn dot_int(row: &[i64], x: &[Rat]) -> Rat {
    row.iter()
        .zip(x)
        .filter(|(c, _)| **c != 0)
        .fold(Rat::zero(), |acc, (c, xi)| acc + xi * rat(*c))
}

pub(crate) fn vec_to_f64(v: &[Rat]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}
