//! Non-abelian tensor products of finite groups via the group `eta(G, H)`.
//!
//! `eta(G, H)` is presented on one generator per non-identity element of `G`
//! and of a copy `H^phi`, enumerated by Todd-Coxeter into a regular
//! permutation group, and its subgroup `[G, H^phi]` is read off as `G (x) H`.
//! The [`verify`] module checks the structural identities of the
//! construction exhaustively over a corpus of small groups.

pub mod abelian;
pub mod action;
pub mod cayley;
pub mod eta;
pub mod fpgroup;
pub mod input;
pub mod nu;
pub mod perm;
pub mod verify;

pub use abelian::{smith_normal_form, AbelianInvariants, IntMatrix, LatticeBuilder, SmithForm};
pub use action::{check_compatibility, validate_action, ActionError, ActionPair, ActionTable, CompatReport};
pub use cayley::{FiniteGroup, GroupError};
pub use eta::{construct_eta, enumerate_complement, trivial_action_baseline, EtaError, EtaGroup, TensorSet};
pub use fpgroup::{parse_presentation, todd_coxeter, CosetTable, EnumError, ParseError, Presentation, Word};
pub use input::{GroupSpec, InputError, PairSpec};
pub use nu::{construct_nu, NuGroup};
pub use perm::{GroupHom, Perm, PermError, PermGroup};
pub use verify::{run_corpus, Claim, ClaimReport, Corpus, Verdict, VerifyOptions};
