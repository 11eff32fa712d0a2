//! Exact representation theory of the discrete Heisenberg–Weyl group over `Z/2^s`.
//!
//! Elements are triples `(m, n, l)` with the law
//! `(m,n,l)(m',n',l') = (m + m' + l n', n + n', l + l')`. Irreps are labelled by
//! canonical triples `(p, q, r)` and evaluated as monomial matrices whose
//! nonzero entries are powers of a primitive `2^s`-th root of unity, so every
//! trace, character and fusion multiplicity is computed in exact arithmetic.
//!
//! ```
//! use hwgroup::{fuse, irrep_matrix, GroupElement, IrrepLabel};
//!
//! let d = IrrepLabel::new(2, 2, 1, 1)?;
//! let m = irrep_matrix(&d, &GroupElement::new(0, 1, 1))?;
//! assert_eq!(m.entry(0), (0, 1, 1)); // row 0 holds w^1 in column 1
//!
//! let terms = fuse(&IrrepLabel::new(2, 1, 0, 0)?, &IrrepLabel::new(2, 3, 0, 0)?)?;
//! assert_eq!(terms.len(), 16);
//! # Ok::<(), hwgroup::HwError>(())
//! ```

pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod fourier;
pub mod fusion;
pub mod golden;
pub mod group;
pub mod monomial;
pub mod rep;
pub mod verify;

pub use characters::{character, character_table, CharValue, CharacterTable};
pub use cyclotomic::{CycInt, RootExponent};
pub use error::{HwError, Result};
pub use fourier::{fourier_fd, verify_fourier_relations, DenseUnitary, FourierReport};
pub use fusion::{fuse, fusion_coeff_bruteforce, fusion_coeff_closed, fusion_table, FusionRow, FusionTable, FusionTerm};
pub use group::{ConjugacyClass, GroupElement, GroupParams};
pub use monomial::{ExactMatrix, MonomialMatrix};
pub use rep::{canonicalize_label, enumerate_irreps, irrep_matrix, IrrepLabel};
