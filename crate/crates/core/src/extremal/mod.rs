//! Envelope functions, forbidden-subgraph checks and empirical fits.

mod envelope;
mod fit;
mod sweep;
mod zarankiewicz;

pub use envelope::{
    alphas, check_scaling, check_decrement, check_dominance, e_func, f_func, fstar_func, graph_exponents,
    Envelope, ScalingReport, DecrementOutcome, DominanceOutcome,
};
pub use sweep::{envelope_sweep, SweepKind, SweepRow, SCALING_TOL};
pub use fit::{exponent_fit, loglog_fit, ExponentFit};
pub use zarankiewicz::{
    edge_bound_check, extract_dense_biclique, kst_free_check, DenseBiclique, EdgeBoundReport, KST_MAX_PARAM,
    KST_MAX_SIDE,
};
