//! Boolean doctrines, their universal filters and ultrafilters, and the free
//! addition of one layer of quantifiers decided by bounded Herbrand witness
//! search.
//!
//! Three doctrine backends implement [`doctrine::Doctrine`]: quantifier-free
//! formulas modulo a universal theory, finite power-set tables over a
//! meet-semilattice, and subsets of finite sets.

pub mod category;
pub mod doctrine;
pub mod error;
pub mod filters;
pub mod free1;
pub mod io;
pub mod models;
pub mod normal;
pub mod parse;
pub mod prop;
pub mod syntax;

pub use category::{enumerate_morphisms, CtxMor, SemilatticeCategory, SlMor};
pub use doctrine::{
    add_constant, AtomSet, ConstAdjoined, Doctrine, FiniteDoctrine, PointSet, Shape, StructureDoctrine, SubsetsDoctrine,
    SyntacticDoctrine, Tri, Tuple,
};
pub use error::{Error, Result};
pub use filters::{
    check_family_axioms, check_pair_axioms, check_witness, extend_to_ultrafilter, filter_closure, ideal_closure,
    ultrafilters_of, universal_filters, universal_ideals, witness_search, AxiomReport, FamilyKind, FiniteFamily,
    MixedSequent, SearchBounds, SearchOutcome, Witness,
};
pub use free1::{forall_embed, forall_gen, free1_leq, free1_reindex, Free1Element, Free1Options, Generator};
pub use io::{parse_free1, parse_sequent, witness_from_json, witness_to_json, SequentFile};
pub use models::{elementary_quotient, enumerate_models, valid_universal_family, CoverModel, PropModel, StructureModel};
pub use normal::{normal_form, NfKind, NormalForm};
pub use parse::{parse_formula, parse_term, parse_theory, Theory};
pub use prop::prop_entails;
pub use syntax::{QFFormula, Signature, Term};
