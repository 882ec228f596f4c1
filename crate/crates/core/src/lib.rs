//! Finite pointfree topology: frames, congruences, coproducts and pushouts,
//! biframes, the lattice of subbilocales, and least dense subbilocales.
//!
//! Every finite frame is a finite distributive lattice, and every frame
//! homomorphism between finite frames is a bounded lattice homomorphism, so
//! all constructions here are exact and decidable.

pub mod biframe;
pub mod builtin;
pub mod colimit;
pub mod congruence;
pub mod corpus;
pub mod density;
pub mod dot;
pub mod error;
pub mod frame;
pub mod io;
pub mod label;
pub mod oracle;
pub mod order;
pub mod subbilocale;
pub mod verify;
pub mod workspace;

pub use biframe::{Biframe, BiframeHom, Factorization};
pub use colimit::{Coproduct, PushoutSquare};
pub use congruence::Congruence;
pub use density::{BiframeBooleanization, Booleanization};
pub use error::{Error, Result};
pub use frame::{Frame, FrameHom};
pub use order::{Elem, Lattice, Poset};
pub use subbilocale::{Sublocale, SublocaleLattice, Subbilocale, SubbilocaleLattice};

/// Size caps for the exhaustive constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest poset whose down-set lattice may be built.
    pub downset_points: usize,
    /// Largest lattice that will be materialized with full tables.
    pub lattice_elements: usize,
    /// Largest frame for which congruences or homomorphisms are enumerated.
    pub enumeration_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            downset_points: 63,
            lattice_elements: 1024,
            enumeration_elements: 24,
        }
    }
}

impl Limits {
    /// Defaults, with `BIFRAME_CAP` overriding the enumeration cap.
    pub fn from_env() -> Limits {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var("BIFRAME_CAP").ok().and_then(|v| v.parse().ok()) {
            limits.enumeration_elements = cap;
        }
        limits
    }

    pub fn with_cap(self, cap: usize) -> Limits {
        Limits { enumeration_elements: cap, ..self }
    }

    pub(crate) fn check_enumeration(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.enumeration_elements {
            Err(Error::SizeLimitExceeded { what, size, cap: self.enumeration_elements })
        } else {
            Ok(())
        }
    }
}
