//! Seeded generators and randomized property checks.

mod checks;
mod gen;
mod jensen;
mod spec;

pub use checks::{
    check_block_regularity_split, equality_violation, loewner_violation, run_suite, Check,
    CheckReport, MAX_CONGRUENCE_COND, MIN_CONGRUENCE_DET,
};
pub use gen::{
    default_split, gen_block_tuple, gen_commuting, gen_spd, gen_tuple, trial_seed, CommutingTuple,
};
pub use jensen::{AuxiliaryMap, CONTRACTION_NORM, JENSEN_SHIFT};
pub use spec::{GenSpec, Structure, MAX_COND, MAX_DIM};

macro_rules! check_fns {
    ($($fn_name:ident => $variant:ident),* $(,)?) => {
        $(
            #[doc = concat!("Runs the `", stringify!($variant), "` check; see [`Check`].")]
            pub fn $fn_name(
                kind: crate::means::MeanKind,
                spec: &GenSpec,
                trials: usize,
                tol: f64,
            ) -> crate::error::Result<CheckReport> {
                Check::$variant.run(kind, spec, trials, tol)
            }
        )*
    };
}

check_fns! {
    check_commuting => Commuting,
    check_two_variable => TwoVariable,
    check_homogeneity => Homogeneity,
    check_joint_homogeneity => JointHomogeneity,
    check_concavity => Concavity,
    check_updating => Updating,
    check_perspective => Perspective,
    check_monotone => Monotone,
    check_congruence => Congruence,
    check_unitary => Unitary,
    check_self_dual => SelfDual,
    check_determinant => Determinant,
    check_hga => Hga,
    check_block_regularity => BlockRegularity,
    check_jensen => Jensen,
    check_jensen_pair => JensenPair,
    check_karcher_residual => KarcherResidual,
}
