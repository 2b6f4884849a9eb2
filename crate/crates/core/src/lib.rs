//! Exact continued-fraction arithmetic and Cantor's bijection between the
//! irrationals of the unit interval and those of the unit square.
//!
//! Every value of `x`, `f_1(x)`, `f_2(x)` and every interval endpoint is an
//! exact [`BigRational`]; irrational points are handled as digit streams and
//! evaluated through rigorous rank-interval enclosures. Only logarithms (in
//! [`regularity`]) leave exact arithmetic.

pub mod cantor;
pub mod convergent;
pub mod enclosure;
pub mod error;
pub mod expand;
pub mod harness;
pub mod metric;
pub mod numeric;
pub mod regularity;
pub mod sample;
pub mod stream;
pub mod text;
pub mod word;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use cantor::{
    discontinuity_witness, forward_value, interleave, inverse_digits, split, DiscontinuityWitness,
    SplitPair,
};
pub use convergent::{convergents, rank_interval, tail_value, ConvergentTable, RankInterval};
pub use enclosure::Enclosure;
pub use error::{CfError, Result};
pub use expand::{expand_certified, ExpansionStatus};
pub use metric::{distance_d, distance_dprime, DistanceEnclosure, Ultrametric};
pub use regularity::{
    ae_band, ergodic_averages, holder_band_f1, holder_band_f2, khintchine, multifractal_example,
    slope_sample, Component, HolderBand,
};
pub use sample::sample_irrational;
pub use stream::{digit_at, DigitStream};
pub use word::{alternate_form, eval_finite, rational_to_cf, CFWord};
