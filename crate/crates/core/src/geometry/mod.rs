//! Certified geometric consequences for `P_l W_{n,2}`, complex projective spaces and lens spaces.

mod certificates;
mod claims;
mod complement;
mod pontrjagin;

pub use certificates::{
    best_immersion_bound, best_span_bound, evaluate_index, immersion_certificate,
    immersion_certificate_at, manifold_dim, span_certificate, span_certificate_at, Bundle,
    ImmersionCertificate, ImmersionSweep, IndexEvaluation, SpanCertificate, SpanSweep,
};
pub use claims::{
    check_immersion_theorem, check_span_theorem, Claim, ClaimCheck, ClaimEntry, Hypothesis,
    Verdict,
};
pub use complement::{
    cp_complement_min_rank, lens_rank_bound, lens_sq2_criterion, CriterionResult, LensParams,
    RankBoundReport, RankReason, Space,
};
pub use pontrjagin::{normal_pontrjagin, tangent_pontrjagin};
