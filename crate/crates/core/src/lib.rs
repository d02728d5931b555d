//! Exact arithmetic over `F_r(T)` for truncated Bernoulli-Carlitz and
//! Cauchy-Carlitz numbers, Stirling-Carlitz numbers of both kinds, and the
//! supporting tower: finite fields, polynomials, rational functions, Carlitz
//! brackets and factorials, sparse truncated series and Hasse-Teichmüller
//! derivatives.

pub mod carlitz;
pub mod compositions;
pub mod error;
pub mod field;
pub mod htd;
pub mod poly;
pub mod ratfunc;
pub mod record;
pub mod selfcheck;
pub mod series;
pub mod special;
pub mod stirling;

pub use carlitz::{binom_mod_p, CarlitzContext};
pub use compositions::{enumerate_power_compositions, PowerComposition};
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use record::{Quantity, Record};
pub use series::{SeriesKind, SparseSeries};
pub use special::{compute, Family, Method, SpecialNumberQuery, SpecialNumberResult};
pub use stirling::{Flavor, StirlingKind};
