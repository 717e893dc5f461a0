//! Serializable reports. Field order is fixed by declaration order.

use fanlab_core::fan::{ConvexityReport, FlagReport, ValidationReport};
use fanlab_core::gammasig::{PredicateReport, SignatureSummary};
use fanlab_core::polymat::{subset_label, AlgorithmTrace, CompatReport, ExtremeReport};
use fanlab_core::structure::{
    BlockCoverReport, CrossReport, DichotomyCase, DichotomyReport, FourCycleReport, SpecialRayReport,
    SuspensionDecomposition,
};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckDto {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallWitness {
    pub ray: usize,
    pub wall: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub ok: bool,
    pub complete: bool,
    pub checks: Vec<CheckDto>,
    /// Absent when the fan is not complete.
    pub flag: Option<bool>,
    pub flag_witness: Option<Vec<usize>>,
    pub locally_convex: Option<bool>,
    pub convexity_witness: Option<WallWitness>,
}

impl ValidateReport {
    pub fn new(v: &ValidationReport, flag: Option<&FlagReport>, conv: Option<&ConvexityReport>) -> Self {
        let complete = v.is_complete();
        let checks = v
            .checks
            .iter()
            .map(|c| CheckDto { name: c.name.to_string(), passed: c.passed, witness: c.witness.clone(), detail: c.detail.clone() })
            .collect();
        let ok = complete && flag.is_some_and(|f| f.flag) && conv.is_some_and(|c| c.locally_convex);
        ValidateReport {
            ok,
            complete,
            checks,
            flag: flag.map(|f| f.flag),
            flag_witness: flag.and_then(|f| f.witness.clone()),
            locally_convex: conv.map(|c| c.locally_convex),
            convexity_witness: conv.and_then(|c| c.witness.clone()).map(|(ray, wall)| WallWitness { ray, wall }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessDto {
    pub p: usize,
    pub cone: Vec<usize>,
    pub tuple: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureReport {
    pub dim: usize,
    pub f: Vec<i64>,
    pub h: Vec<i64>,
    pub gamma: Vec<i64>,
    pub signature: i64,
    pub signed_top_gamma: i64,
    /// No nonvanishing odd monomial on a pairwise non-special cone.
    pub predicate: bool,
    pub consistent: bool,
    pub cones_checked: usize,
    pub tuples_checked: usize,
    pub witnesses: Vec<WitnessDto>,
}

impl SignatureReport {
    pub fn new(dim: usize, s: &SignatureSummary, p: &PredicateReport) -> Self {
        SignatureReport {
            dim,
            f: s.f.clone(),
            h: s.h.clone(),
            gamma: s.gamma.clone(),
            signature: s.signature,
            signed_top_gamma: s.signed_top_gamma,
            predicate: p.predicate,
            consistent: p.consistent,
            cones_checked: p.suite.cones_checked,
            tuples_checked: p.suite.tuples_checked,
            witnesses: p.suite.witnesses.iter().map(|w| WitnessDto { p: w.p, cone: w.cone.clone(), tuple: w.tuple.clone() }).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialEntry {
    pub pcone: Vec<usize>,
    pub a: Vec<usize>,
    pub link_rays: Vec<usize>,
    pub special: Vec<usize>,
    pub non_special: Vec<usize>,
    pub polytope_dim: usize,
    pub subspace_dim: usize,
    pub per_cone_counts: Vec<usize>,
    pub uniform: bool,
    pub spans_subspace: bool,
    pub center_violations: usize,
    pub cross_violations: usize,
}

impl From<&SpecialRayReport> for SpecialEntry {
    fn from(r: &SpecialRayReport) -> Self {
        SpecialEntry {
            pcone: r.pcone.clone(),
            a: r.a.clone(),
            link_rays: r.link_rays.clone(),
            special: r.special.clone(),
            non_special: r.non_special.clone(),
            polytope_dim: r.polytope_dim,
            subspace_dim: r.subspace.dim(),
            per_cone_counts: r.per_cone_counts.clone(),
            uniform: r.uniform,
            spans_subspace: r.spans_subspace,
            center_violations: r.conditions.center_violations,
            cross_violations: r.conditions.cross_violations,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialRaysReport {
    pub p_max: usize,
    pub entries: Vec<SpecialEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossDto {
    pub pairing: Option<Vec<(usize, usize)>>,
    pub nonvanishing_ray: Option<usize>,
    pub failure: Option<String>,
}

impl From<&CrossReport> for CrossDto {
    fn from(c: &CrossReport) -> Self {
        CrossDto { pairing: c.pairing.clone(), nonvanishing_ray: c.witness, failure: c.failure.clone() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuspensionDto {
    pub ray: usize,
    pub core_dim: usize,
    pub core_rays: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub residual: Vec<usize>,
    pub valid: bool,
}

impl From<&SuspensionDecomposition> for SuspensionDto {
    fn from(s: &SuspensionDecomposition) -> Self {
        SuspensionDto {
            ray: s.ray,
            core_dim: s.core.dim(),
            core_rays: s.core_rays.clone(),
            pairs: s.pairs.clone(),
            residual: s.residual.clone(),
            valid: s.valid,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuspensionsReport {
    pub cross_polytope: CrossDto,
    pub rays: Vec<SuspensionDto>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureDto {
    pub wall: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RayWitnessDto {
    pub ray: usize,
    pub flat_walls: Vec<Vec<usize>>,
    pub cycle: Option<[usize; 4]>,
    pub failures: Vec<FailureDto>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourCyclesReport {
    pub cycles: Vec<[usize; 4]>,
    pub unwitnessed: Vec<usize>,
    pub rays: Vec<RayWitnessDto>,
}

impl From<&FourCycleReport> for FourCyclesReport {
    fn from(r: &FourCycleReport) -> Self {
        FourCyclesReport {
            cycles: r.cycles.iter().map(|c| c.rays).collect(),
            unwitnessed: r.unwitnessed.clone(),
            rays: r
                .rays
                .iter()
                .map(|w| RayWitnessDto {
                    ray: w.ray,
                    flat_walls: w.flat_walls.clone(),
                    cycle: w.cycle.as_ref().map(|c| c.rays),
                    failures: w.failures.iter().map(|(wall, message)| FailureDto { wall: wall.clone(), message: message.clone() }).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CenterDto {
    pub ray: usize,
    pub centers: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub apex: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlocksReport {
    pub centers: Vec<CenterDto>,
    pub structure_holds: bool,
    pub pairs_checked: usize,
    pub sharing_counterexamples: Vec<[usize; 3]>,
}

impl From<&BlockCoverReport> for BlocksReport {
    fn from(b: &BlockCoverReport) -> Self {
        BlocksReport {
            centers: b
                .centers
                .iter()
                .zip(&b.structures)
                .map(|((ray, centers), s)| CenterDto {
                    ray: *ray,
                    centers: centers.clone(),
                    pairs: s.pairs.clone(),
                    apex: s.apex.clone(),
                    holds: s.holds,
                })
                .collect(),
            structure_holds: b.structure_holds,
            pairs_checked: b.pairs_checked,
            sharing_counterexamples: b.sharing_counterexamples.iter().map(|&(x, y, g)| [x, y, g]).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "case", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseDto {
    VanishingConormal { ray: usize },
    Trivial { pair: (usize, usize) },
    FlatSubspace { polytope_dim: usize },
    AllNonspecialSuspension { specials: Vec<(usize, Vec<usize>)> },
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyEntry {
    pub pcone: Vec<usize>,
    #[serde(flatten)]
    pub case: CaseDto,
    pub polytope_dim: usize,
    pub inconsistent: bool,
}

impl From<&DichotomyReport> for DichotomyEntry {
    fn from(r: &DichotomyReport) -> Self {
        let case = match &r.case {
            DichotomyCase::VanishingConormal { ray } => CaseDto::VanishingConormal { ray: *ray },
            DichotomyCase::Trivial { pair } => CaseDto::Trivial { pair: *pair },
            DichotomyCase::FlatSubspace { polytope_dim } => CaseDto::FlatSubspace { polytope_dim: *polytope_dim },
            DichotomyCase::AllNonspecialSuspension { specials } => {
                CaseDto::AllNonspecialSuspension { specials: specials.clone() }
            }
            DichotomyCase::None => CaseDto::None,
        };
        DichotomyEntry { pcone: r.pcone.clone(), case, polytope_dim: r.polytope_dim, inconsistent: r.inconsistent }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyListReport {
    pub p_max: usize,
    pub signature: Option<i64>,
    pub entries: Vec<DichotomyEntry>,
}

/// One run of the odd-tuple algorithm. Elements and permutations are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct RunDto {
    pub perm: Vec<usize>,
    pub tuple: Vec<i64>,
    #[serde(rename = "T")]
    pub t: Vec<i64>,
    #[serde(rename = "R")]
    pub bounds: Vec<i64>,
    pub transitions: Vec<usize>,
    pub parity_flags: Vec<i64>,
    pub mus: Vec<i64>,
    pub compatible: bool,
    pub violated_subset: Option<String>,
    pub extreme_holds: bool,
    pub literal_alpha_violations: usize,
}

impl RunDto {
    pub fn new(a: &[i64], trace: &AlgorithmTrace, compat: &CompatReport, ext: &ExtremeReport) -> Self {
        RunDto {
            perm: trace.pi.iter().map(|e| e + 1).collect(),
            tuple: a.to_vec(),
            t: trace.t.clone(),
            bounds: trace.bounds.clone(),
            transitions: trace.blocks.clone(),
            parity_flags: trace.parity_flags.clone(),
            mus: trace.mus.clone(),
            compatible: compat.compatible,
            violated_subset: compat.witness.map(subset_label),
            extreme_holds: ext.holds,
            literal_alpha_violations: ext.violations_with_previous,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleDto {
    pub tuples: Vec<Vec<i64>>,
    /// Every run is compatible exactly when its tuple is listed.
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OddTupleReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub total: i64,
    pub runs: Vec<RunDto>,
    pub oracle: Option<OracleDto>,
}

/// Exhaustive comparison of the odd-tuple engine against brute force.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub max_total: i64,
    pub functions: usize,
    pub parity_skipped: usize,
    pub runs: usize,
    pub compatible_runs: usize,
    /// (a) Compatible outputs missing from the brute-force list.
    pub compatible_not_in_oracle: usize,
    /// Incompatible outputs that are nevertheless in the region.
    pub incompatible_in_oracle: usize,
    pub empty_oracle: usize,
    /// (b) Functions with no odd tuple where some run is flagged compatible.
    pub empty_oracle_with_compatible_run: usize,
    /// Functions with odd tuples where every run is incompatible.
    pub missed_functions: usize,
    pub errors: Vec<String>,
}
