//! Order dimension, realizers, and finite fragments of the generic
//! n-dimensional partial order over exact rational point clouds.

mod bits;
mod constraint;
pub mod dimension;
pub mod error;
pub mod flow;
pub mod geometry;
pub mod homogeneity;
pub mod io;
pub mod poset;
pub mod ramsey;

pub use dimension::{
    all_linear_extensions, all_realizers, dimension, find_realizers, find_realizers_over, ore_embedding, Budget,
    DimensionResult, LinearExtensions, OreEmbedding,
};
pub use error::{Error, Result};
pub use flow::{
    classify_realizer, cloud_automorphisms, enumerate_realizers, extend_realizer_closure, extend_realizers,
    logic_action, semidirect_decomposition, DecompositionReport, RealizerSet,
};
pub use geometry::{
    back_and_forth_iso, forth_extend, induced_structure, pick_in_region, regions_of, sample_dn, symmetric_sample,
    FlipPattern, Interval, PartialEmbedding, PartialIsomorphism, Point, PointCloud, Rational, Region, Sign,
};
pub use homogeneity::{
    ap_failure_certificate, check_dpo_fragment, nonhom_witness, qn_lex_nonhom_witness, two_homogeneity_extend,
    AxiomReport, Certificate, CertificateKind, Fragment,
};
pub use poset::{
    crown, hiraguchi_bound, is_realizer, lex_order, product_order, szpilrajn_extend, validate_poset, FinitePoset,
    LinearOrder, OrderedStructure, RealizerTuple,
};
pub use ramsey::{
    enumerate_copies, find_mono_subgrid, induced_coloring, product_ramsey_number, ramsey_witness_check, rigid_embed,
    Coloring, GridStruct, Subgrid, WitnessPath,
};
