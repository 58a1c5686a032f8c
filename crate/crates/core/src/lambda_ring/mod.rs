//! Exact arithmetic in `Λ = Q[t, t^-1]`, its fraction field and the
//! coefficient group `Q(t)/Λ`.

mod cyclotomic;
mod euclid;
mod fraction;
mod laurent;

pub use cyclotomic::{
    as_cyclotomic_power, cyclotomic, cyclotomic_divisors, distinct_prime_factors, divisors,
    euler_phi, is_in_t,
};
pub use euclid::{gcd, gcd_bezout, lcm, reduce_mod, Bezout};
pub use fraction::{reduce_mod_lambda, QtModLambda, RationalFunction};
pub use laurent::Laurent;
