//! Submodules of `F_q[[T]]^d` of finite colength, modelled in the finite
//! truncations `(F_q[T]/T^N)^d`, for prime `q`.

mod enumerate;
mod field;
mod module;
mod strata;

pub use enumerate::{
    all_subspaces, canonicalize, count_by_colength, count_by_colength_with, enumerate_codim_range,
    enumerate_colength, enumerate_submodules, enumerate_submodules_with, galois_number,
    gaussian_binomial, working_truncation, EnumOptions, Strategy, DEFAULT_CAP,
};
pub use field::{is_prime, Fq, FqScalar};
pub use module::{
    echelonize, leading_module, leading_module_in, Ambient, ModuleVector, Monomial, MonomialOrder,
    SubmoduleBasis,
};
pub use strata::{
    enumerate_stratum, enumerate_stratum_in, groebner_free_count, groebner_free_monomials,
    hnf_enumerate, hnf_enumerate_with, hnf_with_diagonal, strata_table, StratumRow,
};
