//! Exact computation of symbolic powers, containments and resurgence
//! windows for coordinate-subspace arrangements.

pub mod arrangement;
pub mod asymptotics;
pub mod calculus;
pub mod covering;
pub mod error;
pub mod fraction;
pub mod ideal;
pub mod incidence;
pub mod invariants;
pub mod monomial;
pub mod oracle;
pub mod simplex;

pub use arrangement::{Arrangement, PhiMap, Properties};
pub use asymptotics::{
    conjecture_explore, degree_test_poly, expected_symbolic_dim, generic_lines_hilbert, largest_root_g,
    line_family, line_power_hilbert_p3, point_power_hilbert, CubicRootResult, ExploreRow, FamilyRecord,
};
pub use calculus::{
    asymptotic_bound, criterion_mbcb, derive_fact, knapsack_derive, knapsack_derive_with_tail, DerivedFact,
    FactLedger,
};
pub use covering::{CoveringIlp, IlpSolution};
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use ideal::{Limits, MonomialIdeal};
pub use incidence::{Incidence, IncidenceType};
pub use invariants::{
    alpha_symbolic, containment_check, containment_matrix, gamma_exact, gamma_window, invariant_record,
    noetherian_evidence, resurgence_window, AlphaSolver, BoundInterval, ContainmentEngine, ContainmentFact,
    ContainmentMatrix, ContainmentMethod, ContainmentStatus, EvidenceReport, GammaCertificate,
    InvariantRecord, ResurgenceReport,
};
pub use monomial::Monomial;
pub use simplex::{solve_covering_lp, CoveringLpSolution, CoveringMatrix};
