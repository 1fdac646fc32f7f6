//! Exact orbifold Euler characteristics `χ^(A)(X, G)` of finite group
//! actions, wreath products `G ≀ S_n`, and the generating series
//! `ζ^(A)_(X,G)(t) = Σ_n χ^(A)(X^n, G ≀ S_n) t^n`.

pub mod error;
pub mod euler;
pub mod group;
pub mod presentation;
pub mod series;
pub mod space;
pub mod verify;
pub mod wreath;

mod bitset;
mod perm;
mod spec_parse;

pub use error::{Error, Result};
pub use euler::{EulerValue, Engine, Limits};
pub use group::{FiniteGroup, GroupSpec, Subgroup};
pub use presentation::{FgPresentation, Homomorphism};
pub use series::RationalSeries;
pub use space::{FiniteGSet, Space, VirtualGSpace};
pub use wreath::{WreathElement, WreathType};
