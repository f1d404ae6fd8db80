//! Binomial edge ideals of graphs: cut sets and minimal primes, graph
//! families, symbolic F-splitting certificates and a small Gröbner oracle
//! over `F_p` for cross-checking them.

pub mod certify;
pub mod error;
pub mod families;
pub mod graph;
pub mod groebner;
pub mod poly;
pub mod primes;
mod unionfind;

pub use error::{Error, Result};
pub use graph::{Graph, Labeling};
pub use poly::{Atom, FactoredWitness, MonomialOrder, Poly, PrimeField};
pub use primes::{enumerate_minimal_primes, is_cut_set, MinimalPrime};
