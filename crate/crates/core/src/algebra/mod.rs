//! Exact polynomial algebra over Q: Sturm chains, root isolation and the
//! characteristic polynomial of a reception zone restricted to a line.

mod characteristic;
mod poly;
mod sturm;
pub(crate) mod zpoly;

pub use characteristic::{
    restrict_characteristic, restrict_characteristic_exact, restrict_noise_polynomial, to_rational,
    to_rational_point, CharacteristicParts, ExactNetwork,
};
pub use poly::RationalUniPoly;
pub use sturm::{eval_poly, simplest_rational, isolate_all_roots, isolate_roots, sturm_count, RootInterval, RootIsolation, SturmChain};
pub(crate) use sturm::{refine_interval, separate_interval};
