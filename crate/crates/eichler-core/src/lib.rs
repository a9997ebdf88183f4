#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod chartab;
pub mod cyclo;
pub mod eichler;
pub mod error;
pub mod info;
pub mod mnec;
pub mod modp;
pub mod perm;
pub mod present;
pub mod quotient;
pub mod util;
pub mod verdict;
pub mod zoo;

pub use error::{Error, Result};
pub use perm::{ConjugacyClasses, ElementTable, PermGroup, Permutation};
pub use present::{coset_action, coset_enumerate, Presentation};
