//! Verification suite: every checkable claim about `eta`, `nu` and the
//! diagonal, evaluated over a corpus of groups and action pairs. Each
//! (instance, claim) produces one [`ClaimReport`].

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::{tensor_square_with_diagonal, AbelianInvariants, LatticeBuilder};
use crate::action::{check_compatibility, incompatible_example, ActionPair};
use crate::cayley::FiniteGroup;
use crate::eta::{construct_eta, enumerate_complement, key_of, trivial_action_baseline, EtaError, EtaGroup};
use crate::fpgroup::EnumError;
use crate::input::{CorpusFile, InputError};
use crate::nu::{construct_nu, NuGroup};
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Compat,
    CompatReject,
    EtaRelations,
    Decomposition,
    CommutatorIdentities,
    TensorNormalSubset,
    FinitenessMachinery,
    CentralizerBound,
    TensorFiniteness,
    MuQuotient,
    DerivedDecomposition,
    PiContainment,
    DiagonalEpimorphism,
    DeltaFormula,
    TrivialOracle,
}

impl Claim {
    pub const ALL: [Claim; 15] = [
        Claim::Compat,
        Claim::CompatReject,
        Claim::EtaRelations,
        Claim::Decomposition,
        Claim::CommutatorIdentities,
        Claim::TensorNormalSubset,
        Claim::FinitenessMachinery,
        Claim::CentralizerBound,
        Claim::TensorFiniteness,
        Claim::MuQuotient,
        Claim::DerivedDecomposition,
        Claim::PiContainment,
        Claim::DiagonalEpimorphism,
        Claim::DeltaFormula,
        Claim::TrivialOracle,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Compat => "compat",
            Claim::CompatReject => "compat-reject",
            Claim::EtaRelations => "eta-relations",
            Claim::Decomposition => "decomposition",
            Claim::CommutatorIdentities => "commutator-identities",
            Claim::TensorNormalSubset => "tensor-normal-subset",
            Claim::FinitenessMachinery => "finiteness-machinery",
            Claim::CentralizerBound => "centralizer-bound",
            Claim::TensorFiniteness => "tensor-finiteness",
            Claim::MuQuotient => "mu-quotient",
            Claim::DerivedDecomposition => "derived-decomposition",
            Claim::PiContainment => "pi-containment",
            Claim::DiagonalEpimorphism => "diagonal-epimorphism",
            Claim::DeltaFormula => "delta-formula",
            Claim::TrivialOracle => "trivial-oracle",
        }
    }

    pub fn from_id(id: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.id() == id)
    }

    /// The statement being checked, in the notation of the reports.
    pub fn statement(self) -> &'static str {
        match self {
            Claim::Compat => "g^(h^g1) = ((g^(g1^-1))^h)^g1 and h^(g^h1) = ((h^(h1^-1))^g)^h1 for all triples",
            Claim::CompatReject => "the incompatible pair has a failing triple and eta construction refuses it",
            Claim::EtaRelations => {
                "[g,h^phi]^g1 = [g^g1,(h^g1)^phi] and [g,h^phi]^(h1^phi) = [g^h1,(h^h1)^phi] in the carrier"
            }
            Claim::Decomposition => {
                "eta(G,H) = ([G,H^phi] G) H^phi, trivial intersections, |eta| = |[G,H^phi]| |G| |H|, [G,H^phi] normal"
            }
            Claim::CommutatorIdentities => {
                "[g,h^phi]^[x,y^phi] = [g,h^phi]^(x^-1 x^y) = [g,h^phi]^((y^-x y)^phi); \
                 [g^-1 g^h,y^phi] = [g,h^phi]^-1 [g,h^phi]^(y^phi)"
            }
            Claim::TensorNormalSubset => "T(G,H) is closed under conjugation by G and H^phi",
            Claim::FinitenessMachinery => {
                "T(N,K) normal subset of <N,K^phi>; [N,K^phi] and S = [N,K^phi,K^phi] normal; \
                 [n,k^phi,h^phi] = [n,k^phi]^-1 [n^h,(k^h)^phi]; conditional square identities"
            }
            Claim::CentralizerBound => "[<N,K^phi> : C(t)] <= |T(N,K)| for every tensor t in T(N,K)",
            Claim::TensorFiniteness => "|T(G)| <= |[G,G^phi]|, <T(G)> = [G,G^phi], |nu(G)| = |[G,G^phi]| |G|^2",
            Claim::MuQuotient => {
                "rho: nu(G) -> G well defined and onto, rho'([G,G^phi]) = G', |[G,G^phi]| = |mu(G)| |G'|, mu(G) central"
            }
            Claim::DerivedDecomposition => {
                "nu(G)' = ([G,G^phi] G') (G')^phi, trivial intersections, |nu(G)'| = |[G,G^phi]| |G'|^2"
            }
            Claim::PiContainment => "pi(G) is contained in pi([G,G^phi])",
            Claim::DiagonalEpimorphism => "|Delta(G^ab)| divides |Delta(G)|",
            Claim::DeltaFormula => {
                "Delta(A) = prod C_(n_i) x prod_(j<k) C_gcd(n_j,n_k) for finite abelian A; pi(A) = pi(Delta(A))"
            }
            Claim::TrivialOracle => "trivial actions: [G,H^phi] has the invariants of G^ab (x)_Z H^ab",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim: Claim,
    pub statement: &'static str,
    pub instance: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ClaimReport {
    fn new(claim: Claim, instance: &str, verdict: Verdict, witness: Option<Value>, details: Value) -> ClaimReport {
        debug_assert!(verdict != Verdict::Fail || witness.is_some(), "{} fails without witness", claim.id());
        ClaimReport {
            claim,
            statement: claim.statement(),
            instance: instance.to_string(),
            verdict,
            witness,
            details,
            timing_ms: None,
        }
    }

    fn skipped(claim: Claim, instance: &str, details: Value) -> ClaimReport {
        ClaimReport::new(claim, instance, Verdict::Skipped, None, details)
    }

    /// One JSON line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Pass if `witness` is `None`.
fn verdict_of(claim: Claim, instance: &str, witness: Option<Value>, details: Value) -> ClaimReport {
    let verdict = if witness.is_none() { Verdict::Pass } else { Verdict::Fail };
    ClaimReport::new(claim, instance, verdict, witness, details)
}

/// A pair of subgroups `N` of `G` and `K` of `H`, as element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupChoice {
    pub n_label: String,
    pub n: Vec<usize>,
    pub k_label: String,
    pub k: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: FiniteGroup,
}

#[derive(Clone, Debug)]
pub struct NamedPair {
    pub name: String,
    pub pair: ActionPair,
}

/// Groups and pairs the suite runs over.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    /// `nu(G)` instances (conjugation self-pairs)
    pub groups: Vec<NamedGroup>,
    /// further compatible pairs
    pub pairs: Vec<NamedPair>,
    /// pairs that must be rejected
    pub incompatible: Vec<NamedPair>,
    /// groups whose abelianization is checked against the diagonal formula
    pub abelian: Vec<NamedGroup>,
}

/// Names of the builtin corpus groups.
pub const CORPUS_GROUPS: [&str; 21] = [
    "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "V4", "C2xC4", "C2xC6", "D6", "D8",
    "D10", "D12", "Q8", "S3", "A4",
];

/// Trivial-action cross pairs of the builtin corpus.
pub const TRIVIAL_PAIRS: [(&str, &str); 16] = [
    ("C2", "C2"),
    ("C2", "C3"),
    ("C2", "C4"),
    ("C3", "C6"),
    ("C4", "C6"),
    ("C12", "C8"),
    ("V4", "C2"),
    ("V4", "V4"),
    ("C2xC4", "C4"),
    ("C2xC6", "C2"),
    ("S3", "C2"),
    ("S3", "C3"),
    ("D8", "C2"),
    ("D8", "Q8"),
    ("A4", "C3"),
    ("D12", "C2xC6"),
];

/// Every abelian group of order at most 16, by invariant factors.
pub const SMALL_ABELIAN: [&str; 25] = [
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "C7", "C8", "C2xC4", "C2xC2xC2", "C9", "C3xC3", "C10", "C11",
    "C12", "C2xC6", "C13", "C14", "C15", "C16", "C2xC8", "C4xC4", "C2xC2xC4", "C2xC2xC2xC2",
];

impl Corpus {
    pub fn builtin() -> Corpus {
        let group = |name: &str| NamedGroup {
            name: name.to_string(),
            group: FiniteGroup::builtin(name).expect("corpus names are builtins"),
        };
        let pairs = TRIVIAL_PAIRS
            .iter()
            .map(|&(a, b)| {
                let (g, h) = (group(a).group, group(b).group);
                NamedPair { name: format!("eta({a},{b};trivial)"), pair: ActionPair::trivial(&g, &h) }
            })
            .collect();
        Corpus {
            groups: CORPUS_GROUPS.iter().map(|n| group(n)).collect(),
            pairs,
            incompatible: vec![NamedPair {
                name: "eta(S3,C2;conjugation-by-involution)".to_string(),
                pair: incompatible_example(),
            }],
            abelian: SMALL_ABELIAN.iter().map(|n| group(n)).collect(),
        }
    }

    /// Resolves a user corpus file. Each group is run as `nu(G)` and its
    /// abelianization against the diagonal formula.
    pub fn from_file(file: &CorpusFile, max_cosets: usize) -> Result<Corpus, (String, InputError)> {
        let mut corpus = Corpus::default();
        for g in &file.groups {
            let group = g.group.resolve(max_cosets).map_err(|e| (g.name.clone(), e))?;
            corpus.groups.push(NamedGroup { name: g.name.clone(), group: group.clone() });
            corpus.abelian.push(NamedGroup { name: g.name.clone(), group });
        }
        for p in &file.pairs {
            let pair = p.pair.resolve(max_cosets).map_err(|e| (p.name.clone(), e))?;
            let named = NamedPair { name: p.name.clone(), pair };
            if p.expect_compatible {
                corpus.pairs.push(named);
            } else {
                corpus.incompatible.push(named);
            }
        }
        Ok(corpus)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_cosets: usize,
    /// run only these claims; empty means all
    pub filter: Vec<Claim>,
    /// attach per-claim wall time (makes output non-reproducible)
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_cosets: crate::fpgroup::DEFAULT_MAX_COSETS, filter: Vec::new(), timing: false }
    }
}

impl VerifyOptions {
    fn wants(&self, claim: Claim) -> bool {
        self.filter.is_empty() || self.filter.contains(&claim)
    }
}

enum Instance<'a> {
    Nu(&'a NamedGroup),
    Pair(&'a NamedPair),
    Incompatible(&'a NamedPair),
    Abelian(&'a NamedGroup),
}

const NU_CLAIMS: [Claim; 12] = [
    Claim::Compat,
    Claim::EtaRelations,
    Claim::Decomposition,
    Claim::CommutatorIdentities,
    Claim::TensorNormalSubset,
    Claim::FinitenessMachinery,
    Claim::CentralizerBound,
    Claim::TensorFiniteness,
    Claim::MuQuotient,
    Claim::DerivedDecomposition,
    Claim::PiContainment,
    Claim::DiagonalEpimorphism,
];

const PAIR_CLAIMS: [Claim; 8] = [
    Claim::Compat,
    Claim::EtaRelations,
    Claim::Decomposition,
    Claim::CommutatorIdentities,
    Claim::TensorNormalSubset,
    Claim::FinitenessMachinery,
    Claim::CentralizerBound,
    Claim::TrivialOracle,
];

/// Runs every applicable claim on every instance. Reports are ordered by
/// instance (groups, pairs, incompatible pairs, abelian groups) and then by
/// claim, independent of scheduling.
pub fn run_corpus(corpus: &Corpus, options: &VerifyOptions) -> Vec<ClaimReport> {
    let instances: Vec<Instance> = corpus
        .groups
        .iter()
        .map(Instance::Nu)
        .chain(corpus.pairs.iter().map(Instance::Pair))
        .chain(corpus.incompatible.iter().map(Instance::Incompatible))
        .chain(corpus.abelian.iter().map(Instance::Abelian))
        .collect();
    let per_instance: Vec<Vec<ClaimReport>> = instances
        .par_iter()
        .map(|inst| match inst {
            Instance::Nu(g) => run_nu_instance(g, options),
            Instance::Pair(p) => run_pair_instance(p, options),
            Instance::Incompatible(p) => run_incompatible_instance(p, options),
            Instance::Abelian(g) => run_abelian_instance(g, options),
        })
        .collect();
    per_instance.into_iter().flatten().collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[ClaimReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

fn timed(options: &VerifyOptions, f: impl FnOnce() -> ClaimReport) -> ClaimReport {
    let start = Instant::now();
    let mut r = f();
    if options.timing {
        r.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    r
}

fn skip_all(claims: &[Claim], instance: &str, options: &VerifyOptions, err: &EtaError) -> Vec<ClaimReport> {
    let details = match err {
        EtaError::Enumeration(EnumError::CapacityExceeded { defined, max }) => {
            json!({"reason": "capacity-exceeded", "cosets_defined": defined, "max_cosets": max})
        }
        other => json!({"reason": other.to_string()}),
    };
    claims
        .iter()
        .filter(|c| options.wants(**c))
        .map(|&c| {
            if err.is_capacity() {
                ClaimReport::skipped(c, instance, details.clone())
            } else {
                // anything but running out of room is a defect, not a skip
                ClaimReport::new(c, instance, Verdict::Fail, Some(details.clone()), json!({}))
            }
        })
        .collect()
}

fn eta_claims(
    e: &EtaGroup,
    name: &str,
    choices: &[SubgroupChoice],
    options: &VerifyOptions,
    out: &mut Vec<ClaimReport>,
) {
    if options.wants(Claim::Compat) {
        out.push(timed(options, || check_compat_claim(e.pair(), name)));
    }
    if options.wants(Claim::EtaRelations) {
        out.push(timed(options, || eta_relations(e, name)));
    }
    if options.wants(Claim::Decomposition) {
        out.push(timed(options, || decomposition(e, name)));
    }
    if options.wants(Claim::CommutatorIdentities) {
        out.push(timed(options, || commutator_identities(e, name)));
    }
    if options.wants(Claim::TensorNormalSubset) {
        out.push(timed(options, || tensor_normal_subset(e, name)));
    }
    for choice in choices {
        let inst = format!("{name} N={} K={}", choice.n_label, choice.k_label);
        if options.wants(Claim::FinitenessMachinery) {
            out.push(timed(options, || finiteness_machinery(e, &inst, &choice.n, &choice.k)));
        }
        if options.wants(Claim::CentralizerBound) {
            out.push(timed(options, || centralizer_bound(e, &inst, &choice.n, &choice.k)));
        }
    }
}

fn run_nu_instance(g: &NamedGroup, options: &VerifyOptions) -> Vec<ClaimReport> {
    let name = format!("nu({})", g.name);
    if !NU_CLAIMS.iter().any(|c| options.wants(*c)) {
        return Vec::new();
    }
    let nu = match construct_nu(&g.group, options.max_cosets) {
        Ok(nu) => nu,
        Err(err) => return skip_all(&NU_CLAIMS, &name, options, &err),
    };
    let mut out = Vec::new();
    eta_claims(nu.eta(), &name, &nu_subgroup_choices(&g.group), options, &mut out);
    if options.wants(Claim::TensorFiniteness) {
        out.push(timed(options, || tensor_finiteness(&nu, &name)));
    }
    if options.wants(Claim::MuQuotient) {
        out.push(timed(options, || mu_quotient(&nu, &name)));
    }
    if options.wants(Claim::DerivedDecomposition) {
        out.push(timed(options, || derived_decomposition(&nu, &name)));
    }
    if options.wants(Claim::PiContainment) || options.wants(Claim::DiagonalEpimorphism) {
        let pi = nu.periodicity_and_pi();
        if options.wants(Claim::PiContainment) {
            let details = json!({"pi_group": pi.pi_group, "pi_tensor": pi.pi_tensor, "pi_delta": pi.pi_delta,
                "group_exponent": pi.group_exponent, "tensor_order": nu.eta().tensor_subgroup().order()});
            let missing: Vec<u64> = pi.pi_group.difference(&pi.pi_tensor).copied().collect();
            let witness = (!missing.is_empty()).then(|| json!({"primes_missing": missing}));
            out.push(verdict_of(Claim::PiContainment, &name, witness, details));
        }
        if options.wants(Claim::DiagonalEpimorphism) {
            let details = json!({"delta_order": pi.delta_order, "abelianization": pi.abelianization,
                "delta_of_abelianization": pi.delta_of_abelianization});
            let witness = (!pi.delta_ab_divides).then(|| {
                json!({"delta_order": pi.delta_order, "delta_ab_order": pi.delta_of_abelianization.order()})
            });
            out.push(verdict_of(Claim::DiagonalEpimorphism, &name, witness, details));
        }
    }
    out
}

fn run_pair_instance(p: &NamedPair, options: &VerifyOptions) -> Vec<ClaimReport> {
    if !PAIR_CLAIMS.iter().any(|c| options.wants(*c)) {
        return Vec::new();
    }
    let eta = match construct_eta(&p.pair, options.max_cosets) {
        Ok(e) => e,
        Err(err) => return skip_all(&PAIR_CLAIMS, &p.name, options, &err),
    };
    let all_g: Vec<usize> = (0..p.pair.g().order()).collect();
    let all_h: Vec<usize> = (0..p.pair.h().order()).collect();
    let choices = [SubgroupChoice { n_label: "G".into(), n: all_g, k_label: "H".into(), k: all_h }];
    let mut out = Vec::new();
    eta_claims(&eta, &p.name, &choices, options, &mut out);
    if options.wants(Claim::TrivialOracle) && p.pair.is_trivial() {
        out.push(timed(options, || trivial_oracle(&eta, &p.name)));
    }
    out
}

fn run_incompatible_instance(p: &NamedPair, options: &VerifyOptions) -> Vec<ClaimReport> {
    if !options.wants(Claim::CompatReject) {
        return Vec::new();
    }
    vec![timed(options, || {
        let report = check_compatibility(&p.pair);
        let refused = matches!(construct_eta(&p.pair, options.max_cosets), Err(EtaError::Incompatible { .. }));
        let first = report.failures.first();
        let details = json!({"triples_checked": report.triples_checked, "failing_triples": report.failures.len(),
            "first_failure": first, "refused_by_eta": refused});
        let witness = if first.is_none() {
            Some(json!({"accepted": "no failing triple"}))
        } else if !refused {
            Some(json!({"accepted": "eta construction did not refuse"}))
        } else {
            None
        };
        verdict_of(Claim::CompatReject, &p.name, witness, details)
    })]
}

fn run_abelian_instance(g: &NamedGroup, options: &VerifyOptions) -> Vec<ClaimReport> {
    if !options.wants(Claim::DeltaFormula) {
        return Vec::new();
    }
    vec![timed(options, || delta_formula(&g.name, &g.group.abelian_invariants(), options.max_cosets))]
}

/// `(G, G)` always; for non-abelian `G` also `(G', G)`, `(G', G')` and, when
/// it is proper and non-trivial, `(Z(G), G)`. Normal subgroups are invariant
/// under conjugation, so every choice satisfies the invariance hypothesis.
pub fn nu_subgroup_choices(g: &FiniteGroup) -> Vec<SubgroupChoice> {
    let all: Vec<usize> = (0..g.order()).collect();
    let mut out = vec![SubgroupChoice { n_label: "G".into(), n: all.clone(), k_label: "G".into(), k: all.clone() }];
    if !g.is_abelian() {
        let mut derived = g.derived_subgroup();
        derived.sort_unstable();
        out.push(SubgroupChoice { n_label: "G'".into(), n: derived.clone(), k_label: "G".into(), k: all.clone() });
        out.push(SubgroupChoice { n_label: "G'".into(), n: derived.clone(), k_label: "G'".into(), k: derived });
        let center: Vec<usize> = (0..g.order()).filter(|&z| (0..g.order()).all(|x| g.mul(z, x) == g.mul(x, z))).collect();
        if center.len() > 1 && center.len() < g.order() {
            out.push(SubgroupChoice { n_label: "Z(G)".into(), n: center, k_label: "G".into(), k: all });
        }
    }
    out
}

fn check_compat_claim(pair: &ActionPair, name: &str) -> ClaimReport {
    let report = check_compatibility(pair);
    let witness = report.failures.first().map(|f| json!(f));
    verdict_of(
        Claim::Compat,
        name,
        witness,
        json!({"triples_checked": report.triples_checked, "failing_triples": report.failures.len()}),
    )
}

/// Keys of `[g,h^phi]^g1` and `[g^g1,(h^g1)^phi]`.
pub fn eta_relation_g_keys(e: &EtaGroup, g: usize, h: usize, g1: usize) -> (u32, u32) {
    let pair = e.pair();
    let [a, b, c, d] = e.tensor_factors(g, h);
    let lhs = key_of(&[e.g_inv(g1), a, b, c, d, e.g(g1)]);
    let rhs = e.tensor_key(pair.g().conj(g, g1), pair.h_by_g(h, g1));
    (lhs, rhs)
}

/// Keys of `[g,h^phi]^(h1^phi)` and `[g^h1,(h^h1)^phi]`.
pub fn eta_relation_h_keys(e: &EtaGroup, g: usize, h: usize, h1: usize) -> (u32, u32) {
    let pair = e.pair();
    let [a, b, c, d] = e.tensor_factors(g, h);
    let lhs = key_of(&[e.h_inv(h1), a, b, c, d, e.h(h1)]);
    let rhs = e.tensor_key(pair.g_by_h(g, h1), pair.h().conj(h, h1));
    (lhs, rhs)
}

fn eta_relations(e: &EtaGroup, name: &str) -> ClaimReport {
    let (ng, nh) = (e.pair().g().order(), e.pair().h().order());
    let mut failures = 0usize;
    let mut witness = None;
    for g in 0..ng {
        for h in 0..nh {
            for g1 in 0..ng {
                let (l, r) = eta_relation_g_keys(e, g, h, g1);
                if l != r {
                    failures += 1;
                    witness.get_or_insert_with(|| json!({"family": "g", "g": g, "h": h, "g1": g1}));
                }
            }
            for h1 in 0..nh {
                let (l, r) = eta_relation_h_keys(e, g, h, h1);
                if l != r {
                    failures += 1;
                    witness.get_or_insert_with(|| json!({"family": "h", "g": g, "h": h, "h1": h1}));
                }
            }
        }
    }
    let tuples = ng * nh * (ng + nh);
    verdict_of(Claim::EtaRelations, name, witness, json!({"tuples_checked": tuples, "failures": failures}))
}

fn decomposition(e: &EtaGroup, name: &str) -> ClaimReport {
    let r = e.check_decomposition();
    let witness = if let Some(&a) = r.tensor_meets_g.first() {
        Some(json!({"check": "tensor-meets-g", "g": a}))
    } else if let Some(&b) = r.tensor_g_meets_h.first() {
        Some(json!({"check": "tensor-g-meets-h", "h": b}))
    } else if !r.order_identity {
        Some(json!({"check": "order-identity", "carrier": r.carrier_order, "tensor": r.tensor_order}))
    } else if !r.tensor_normal {
        Some(json!({"check": "tensor-normal"}))
    } else {
        None
    };
    let details = json!({"carrier_order": r.carrier_order, "tensor_order": r.tensor_order,
        "g_order": r.g_order, "h_order": r.h_order, "order_identity": r.order_identity,
        "tensor_normal": r.tensor_normal, "cosets": e.cosets()});
    verdict_of(Claim::Decomposition, name, witness, details)
}

/// Keys of `[g,h^phi]^[x,y^phi]`, `[g,h^phi]^(x^-1 x^y)` and
/// `[g,h^phi]^((y^-x y)^phi)`.
pub fn conjugation_identity_keys(e: &EtaGroup, g: usize, h: usize, x: usize, y: usize) -> [u32; 3] {
    let pair = e.pair();
    let (gg, hh) = (pair.g(), pair.h());
    let t = e.tensor_factors(g, h);
    let c = e.tensor_factors(x, y);
    let ci = e.tensor_inv_factors(x, y);
    let lhs = key_of(&[ci[0], ci[1], ci[2], ci[3], t[0], t[1], t[2], t[3], c[0], c[1], c[2], c[3]]);
    let u = gg.mul(gg.inv(x), pair.g_by_h(x, y));
    let mid = key_of(&[e.g_inv(u), t[0], t[1], t[2], t[3], e.g(u)]);
    let v = hh.mul(pair.h_by_g(hh.inv(y), x), y);
    let rhs = key_of(&[e.h_inv(v), t[0], t[1], t[2], t[3], e.h(v)]);
    [lhs, mid, rhs]
}

/// Key of `(g^-1 g^h)^[x,y^phi]`, the left-hand side read with the base
/// `[g,h]` taken as the element `g^-1 g^h` of `G`.
pub fn literal_reading_key(e: &EtaGroup, g: usize, h: usize, x: usize, y: usize) -> u32 {
    let pair = e.pair();
    let w = pair.g().mul(pair.g().inv(g), pair.g_by_h(g, h));
    let c = e.tensor_factors(x, y);
    let ci = e.tensor_inv_factors(x, y);
    key_of(&[ci[0], ci[1], ci[2], ci[3], e.g(w), c[0], c[1], c[2], c[3]])
}

/// Keys of `[g^-1 g^h, y^phi]` and `[g,h^phi]^-1 [g,h^phi]^(y^phi)`.
pub fn derivation_identity_keys(e: &EtaGroup, g: usize, h: usize, y: usize) -> (u32, u32) {
    let pair = e.pair();
    let w = pair.g().mul(pair.g().inv(g), pair.g_by_h(g, h));
    let lhs = e.tensor_key(w, y);
    let t = e.tensor_factors(g, h);
    let ti = e.tensor_inv_factors(g, h);
    let rhs = key_of(&[ti[0], ti[1], ti[2], ti[3], e.h_inv(y), t[0], t[1], t[2], t[3], e.h(y)]);
    (lhs, rhs)
}

/// The same identity with the roles of `G` and `H` exchanged:
/// `[(h^-1 h^g)^phi, x] = [h^phi,g]^-1 [h^phi,g]^x`.
pub fn mirrored_derivation_keys(e: &EtaGroup, h: usize, g: usize, x: usize) -> (u32, u32) {
    let pair = e.pair();
    let v = pair.h().mul(pair.h().inv(h), pair.h_by_g(h, g));
    // [v^phi, x] = [x, v^phi]^-1
    let lhs = key_of(&e.tensor_inv_factors(x, v));
    let t = e.tensor_factors(g, h);
    let ti = e.tensor_inv_factors(g, h);
    let rhs = key_of(&[t[0], t[1], t[2], t[3], e.g_inv(x), ti[0], ti[1], ti[2], ti[3], e.g(x)]);
    (lhs, rhs)
}

fn commutator_identities(e: &EtaGroup, name: &str) -> ClaimReport {
    let (ng, nh) = (e.pair().g().order(), e.pair().h().order());
    let rows: Vec<(usize, usize, Option<Value>, usize)> = (0..ng)
        .into_par_iter()
        .map(|g| {
            let mut fails = 0;
            let mut literal = 0;
            let mut witness = None;
            for h in 0..nh {
                for x in 0..ng {
                    for y in 0..nh {
                        let [l, m, r] = conjugation_identity_keys(e, g, h, x, y);
                        if l != m || m != r {
                            fails += 1;
                            witness.get_or_insert_with(|| json!({"identity": "conjugation", "g": g, "h": h, "x": x, "y": y}));
                        }
                        if literal_reading_key(e, g, h, x, y) != m {
                            literal += 1;
                        }
                    }
                }
                for y in 0..nh {
                    let (l, r) = derivation_identity_keys(e, g, h, y);
                    if l != r {
                        fails += 1;
                        witness.get_or_insert_with(|| json!({"identity": "derivation", "g": g, "h": h, "y": y}));
                    }
                }
            }
            (g, fails, witness, literal)
        })
        .collect();
    let mut mirror_fails = 0;
    let mut mirror_witness = None;
    for h in 0..nh {
        for g in 0..ng {
            for x in 0..ng {
                let (l, r) = mirrored_derivation_keys(e, h, g, x);
                if l != r {
                    mirror_fails += 1;
                    mirror_witness.get_or_insert_with(|| json!({"identity": "derivation-mirrored", "h": h, "g": g, "x": x}));
                }
            }
        }
    }
    let failures: usize = rows.iter().map(|r| r.1).sum::<usize>() + mirror_fails;
    let literal: usize = rows.iter().map(|r| r.3).sum();
    let witness = rows.into_iter().find_map(|r| r.2).or(mirror_witness);
    let details = json!({
        "conjugation_tuples": ng * nh * ng * nh,
        "derivation_tuples": ng * nh * nh + nh * ng * ng,
        "failures": failures,
        "literal_reading_mismatches": literal,
    });
    verdict_of(Claim::CommutatorIdentities, name, witness, details)
}

/// Conjugates of members of `T(N,K)` by `N` and `K^phi` that leave the set.
fn normal_subset_witness(e: &EtaGroup, n: &[usize], k: &[usize]) -> Result<(usize, Option<Value>), EtaError> {
    let set = e.tensor_set(n, k)?;
    let keys: HashSet<u32> = set.members.iter().map(|m| m.key).collect();
    for m in &set.members {
        let [a, b, c, d] = e.tensor_factors(m.witness.0, m.witness.1);
        for &x in n {
            if !keys.contains(&key_of(&[e.g_inv(x), a, b, c, d, e.g(x)])) {
                return Ok((set.len(), Some(json!({"tensor": m.witness, "conjugator_g": x}))));
            }
        }
        for &y in k {
            if !keys.contains(&key_of(&[e.h_inv(y), a, b, c, d, e.h(y)])) {
                return Ok((set.len(), Some(json!({"tensor": m.witness, "conjugator_h": y}))));
            }
        }
    }
    Ok((set.len(), None))
}

fn tensor_normal_subset(e: &EtaGroup, name: &str) -> ClaimReport {
    let n: Vec<usize> = (0..e.pair().g().order()).collect();
    let k: Vec<usize> = (0..e.pair().h().order()).collect();
    match normal_subset_witness(e, &n, &k) {
        Ok((size, witness)) => verdict_of(Claim::TensorNormalSubset, name, witness, json!({"tensors": size})),
        Err(err) => failed_hypothesis(Claim::TensorNormalSubset, name, &err),
    }
}

fn failed_hypothesis(claim: Claim, name: &str, err: &EtaError) -> ClaimReport {
    ClaimReport::new(claim, name, Verdict::Fail, Some(json!({"invalid_subgroups": err.to_string()})), json!({}))
}

/// Key of the left-normed `[n, k^phi, h^phi]`, as factors.
fn triple_factors(e: &EtaGroup, n: usize, k: usize, h: usize) -> [&Perm; 10] {
    let t = e.tensor_factors(n, k);
    let ti = e.tensor_inv_factors(n, k);
    [ti[0], ti[1], ti[2], ti[3], e.h_inv(h), t[0], t[1], t[2], t[3], e.h(h)]
}

fn finiteness_machinery(e: &EtaGroup, name: &str, n: &[usize], k: &[usize]) -> ClaimReport {
    match machinery(e, name, n, k) {
        Ok(r) => r,
        Err(err) => failed_hypothesis(Claim::FinitenessMachinery, name, &err),
    }
}

fn machinery(e: &EtaGroup, name: &str, n: &[usize], k: &[usize]) -> Result<ClaimReport, EtaError> {
    let pair = e.pair();
    let (gg, hh) = (pair.g(), pair.h());
    let (tensor_set_size, mut witness) = normal_subset_witness(e, n, k)?;
    let ambient = e.generated_by(n, k)?;
    let m = e.tensor_subgroup_of(n, k)?;
    let m_normal = m.is_normal_in(&ambient);
    if !m_normal {
        witness.get_or_insert_with(|| json!({"check": "tensor-subgroup-normal"}));
    }

    // S = [M, K^phi] from all of M, and <X> from the triple commutators
    let m_elems: Vec<Perm> = m.orbit_of_zero().into_iter().map(|key| e.element(key)).collect();
    let mut s_keys = Vec::with_capacity(m_elems.len() * k.len());
    for x in &m_elems {
        let xi = x.inverse();
        for &b in k {
            s_keys.push(key_of(&[&xi, e.h_inv(b), x, e.h(b)]));
        }
    }
    let s = e.subgroup_from_keys(&s_keys)?;
    let mut x_keys = Vec::with_capacity(n.len() * k.len() * k.len());
    let mut x_identity_failures = 0usize;
    for &a in n {
        for &b in k {
            for &c in k {
                let key = key_of(&triple_factors(e, a, b, c));
                let ti = e.tensor_inv_factors(a, b);
                let t2 = e.tensor_factors(pair.g_by_h(a, c), hh.conj(b, c));
                let via_set = key_of(&[ti[0], ti[1], ti[2], ti[3], t2[0], t2[1], t2[2], t2[3]]);
                if key != via_set {
                    x_identity_failures += 1;
                    witness.get_or_insert_with(|| json!({"check": "triple-in-t-inverse-t", "n": a, "k": b, "h": c}));
                }
                x_keys.push(key);
            }
        }
    }
    let x_group = e.subgroup_from_keys(&x_keys)?;
    let x_in_s = x_group.is_subgroup_of(&s);
    let closure = ambient.normal_closure(x_group.generators())?;
    let closure_is_s = closure.order() == s.order() && closure.is_subgroup_of(&s);
    let s_normal = s.is_normal_in(&ambient);
    if !x_in_s || !closure_is_s || !s_normal {
        witness.get_or_insert_with(|| {
            json!({"check": "commutator-subgroup", "x_in_s": x_in_s, "closure_is_s": closure_is_s, "s_normal": s_normal})
        });
    }

    let m_gens = m.generators();
    let m_abelian = m_gens.iter().all(|x| m_gens.iter().all(|y| x.mul(y) == y.mul(x)));
    let x_generates = !m_abelian || x_group.order() == s.order();
    if !x_generates {
        witness.get_or_insert_with(|| json!({"check": "x-generates-s"}));
    }
    let square_failures = m_abelian.then(|| {
        let mut fails = 0usize;
        for &a in n {
            for &c in k {
                let n1 = gg.mul(gg.inv(a), pair.g_by_h(a, c));
                let n1_sq = gg.mul(n1, n1);
                for &b in k {
                    let f = triple_factors(e, a, c, b);
                    let mut sq = [f[0]; 20];
                    sq[..10].copy_from_slice(&f);
                    sq[10..].copy_from_slice(&f);
                    if key_of(&sq) != e.tensor_key(n1_sq, b) {
                        fails += 1;
                        witness.get_or_insert_with(|| json!({"check": "triple-square", "n": a, "h": c, "k": b}));
                    }
                }
            }
        }
        fails
    });
    let k_centralizes = k.iter().all(|&b| m_gens.iter().all(|x| x.mul(e.h(b)) == e.h(b).mul(x)));
    let power_failures = k_centralizes.then(|| {
        let mut fails = 0usize;
        for &a in n {
            for &b in k {
                let t = e.tensor_factors(a, b);
                if key_of(&[t[0], t[1], t[2], t[3], t[0], t[1], t[2], t[3]]) != e.tensor_key(a, hh.mul(b, b)) {
                    fails += 1;
                    witness.get_or_insert_with(|| json!({"check": "tensor-square", "n": a, "k": b}));
                }
            }
        }
        fails
    });
    let details = json!({
        "tensor_set_size": tensor_set_size,
        "ambient_order": ambient.order(),
        "tensor_subgroup_order": m.order(),
        "tensor_subgroup_normal": m_normal,
        "s_order": s.order(),
        "s_normal": s_normal,
        "x_size": x_keys.iter().collect::<BTreeSet<_>>().len(),
        "x_identity_failures": x_identity_failures,
        "x_normal_closure_is_s": closure_is_s,
        "tensor_subgroup_abelian": m_abelian,
        "triple_square_failures": square_failures,
        "k_centralizes_tensor_subgroup": k_centralizes,
        "tensor_square_failures": power_failures,
    });
    Ok(verdict_of(Claim::FinitenessMachinery, name, witness, details))
}

fn centralizer_bound(e: &EtaGroup, name: &str, n: &[usize], k: &[usize]) -> ClaimReport {
    let run = || -> Result<ClaimReport, EtaError> {
        let set = e.tensor_set(n, k)?;
        let ambient = e.generated_by(n, k)?;
        let bound = set.len() as u64;
        let mut max_index = 1;
        let mut witness = None;
        for m in &set.members {
            let t = e.tensor(m.witness.0, m.witness.1);
            let index = ambient.centralizer_index(&t)?;
            max_index = max_index.max(index);
            if index > bound && witness.is_none() {
                witness = Some(json!({"tensor": m.witness, "index": index}));
            }
        }
        let details = json!({"tensors": bound, "max_index": max_index, "ambient_order": ambient.order()});
        Ok(verdict_of(Claim::CentralizerBound, name, witness, details))
    };
    run().unwrap_or_else(|err| failed_hypothesis(Claim::CentralizerBound, name, &err))
}

fn tensor_finiteness(nu: &NuGroup, name: &str) -> ClaimReport {
    let e = nu.eta();
    let all: Vec<usize> = (0..nu.group().order()).collect();
    let set = e.tensor_set(&all, &all).expect("G is invariant under itself");
    let witnesses: Vec<(usize, usize)> = set.members.iter().map(|m| m.witness).collect();
    let span = e.span_of_tensors(&witnesses).expect("tensors lie in the carrier");
    let t = e.tensor_subgroup();
    let g = nu.group().order() as u64;
    let set_bounded = set.len() as u64 <= t.order();
    let generates = span.order() == t.order() && span.is_subgroup_of(t);
    let order_identity = e.carrier().order() == t.order() * g * g;
    let witness = (!(set_bounded && generates && order_identity)).then(|| {
        json!({"set_bounded": set_bounded, "generates": generates, "order_identity": order_identity})
    });
    let details = json!({"tensor_set_size": set.len(), "tensor_order": t.order(), "nu_order": e.carrier().order()});
    verdict_of(Claim::TensorFiniteness, name, witness, details)
}

fn mu_quotient(nu: &NuGroup, name: &str) -> ClaimReport {
    let r = match nu.check_maps() {
        Ok(r) => r,
        Err(err) => {
            return ClaimReport::new(Claim::MuQuotient, name, Verdict::Fail, Some(json!({"error": err.to_string()})), json!({}))
        }
    };
    let witness = if let Some(&rel) = r.rho_bad_relators.first() {
        Some(json!({"check": "rho-relator", "relator": rel}))
    } else if let Some(&(a, b)) = r.tensor_image_mismatch.first() {
        Some(json!({"check": "rho-tensor-image", "a": a, "b": b}))
    } else if !r.passed() {
        Some(json!({"check": "orders", "rho_surjective": r.rho_surjective,
            "rho_prime_onto_derived": r.rho_prime_onto_derived, "quotient_identity": r.quotient_identity,
            "mu_central": r.mu_central, "delta_in_tensor": r.delta_in_tensor}))
    } else {
        None
    };
    let details = json!({"tensor_order": r.tensor_order, "mu_order": r.mu_order, "derived_order": r.derived_order,
        "rho_prime_image_order": r.rho_prime_image_order, "delta_order": r.delta_order,
        "mu_invariants": nu.mu().abelian_invariants()});
    verdict_of(Claim::MuQuotient, name, witness, details)
}

fn derived_decomposition(nu: &NuGroup, name: &str) -> ClaimReport {
    match nu.check_derived_decomposition() {
        Ok(r) => {
            let witness = (!r.passed()).then(|| json!(r));
            let details = json!({"nu_derived_order": r.nu_derived_order, "tensor_order": r.tensor_order,
                "derived_order": r.derived_order});
            verdict_of(Claim::DerivedDecomposition, name, witness, details)
        }
        Err(err) => {
            ClaimReport::new(Claim::DerivedDecomposition, name, Verdict::Fail, Some(json!({"error": err.to_string()})), json!({}))
        }
    }
}

fn trivial_oracle(e: &EtaGroup, name: &str) -> ClaimReport {
    let computed = e.tensor_invariants();
    let expected = trivial_action_baseline(e.pair().g(), e.pair().h());
    let witness = (computed != expected).then(|| json!({"computed": computed, "expected": expected}));
    verdict_of(Claim::TrivialOracle, name, witness, json!({"invariants": computed}))
}

/// Largest `|G (x) G| |G|` for which the coset route is used.
pub const COMPLEMENT_ROUTE_LIMIT: u64 = 4096;
/// Largest `|nu(G)|` for which the full carrier route is used.
pub const CARRIER_ROUTE_LIMIT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaRoute {
    pub route: &'static str,
    pub tensor_square: AbelianInvariants,
    pub delta: AbelianInvariants,
}

/// `Delta(A)` for the abelian group with the given invariants, computed
/// without the closed formula: from the bilinear presentation of
/// `A (x)_Z A`, and from `eta(A, A)` when small enough, either on the cosets
/// of `A^phi` or on the whole carrier.
pub fn delta_routes(inv: &AbelianInvariants, max_cosets: usize) -> Result<Vec<DeltaRoute>, EtaError> {
    let factors = inv.factors();
    let r = factors.len();
    let mut relations = LatticeBuilder::new(r);
    for (i, &d) in factors.iter().enumerate() {
        let mut row = vec![0i64; r];
        row[i] = d as i64;
        relations.insert_i64(&row);
    }
    let mut elements: Vec<Vec<i64>> = vec![Vec::new()];
    for &d in factors {
        elements = elements.into_iter().flat_map(|v| (0..d as i64).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    let (square, delta) = tensor_square_with_diagonal(&relations, &elements);
    let mut routes = vec![DeltaRoute { route: "bilinear", tensor_square: square.clone(), delta }];

    let group = abelian_group(inv);
    let n = group.order() as u64;
    let pair = ActionPair::conjugation(&group);
    let diagonal: Vec<(usize, usize)> = (0..group.order()).map(|a| (a, a)).collect();
    let all: Vec<(usize, usize)> =
        (0..group.order()).flat_map(|a| (0..group.order()).map(move |b| (a, b))).collect();
    if square.order() * n <= COMPLEMENT_ROUTE_LIMIT {
        let c = enumerate_complement(&pair, max_cosets)?;
        routes.push(DeltaRoute {
            route: "eta-cosets",
            tensor_square: c.span(&all)?.abelian_invariants(),
            delta: c.span(&diagonal)?.abelian_invariants(),
        });
    }
    if square.order() * n * n <= CARRIER_ROUTE_LIMIT {
        let nu = construct_nu(&group, max_cosets)?;
        routes.push(DeltaRoute { route: "nu-carrier", tensor_square: nu.tensor_invariants(), delta: nu.delta_invariants() });
    }
    Ok(routes)
}

fn abelian_group(inv: &AbelianInvariants) -> FiniteGroup {
    if inv.is_trivial() {
        return FiniteGroup::trivial();
    }
    let name: Vec<String> = inv.factors().iter().map(|d| format!("C{d}")).collect();
    FiniteGroup::builtin(&name.join("x")).expect("cyclic products are builtins")
}

fn delta_formula(name: &str, inv: &AbelianInvariants, max_cosets: usize) -> ClaimReport {
    let instance = format!("abelian({name})");
    let formula = inv.delta_of_abelian();
    let routes = match delta_routes(inv, max_cosets) {
        Ok(r) => r,
        Err(err) if err.is_capacity() => {
            return ClaimReport::skipped(Claim::DeltaFormula, &instance, json!({"reason": err.to_string()}))
        }
        Err(err) => {
            return ClaimReport::new(Claim::DeltaFormula, &instance, Verdict::Fail, Some(json!({"error": err.to_string()})), json!({}))
        }
    };
    let z_square = inv.z_tensor(inv);
    let mut witness = routes
        .iter()
        .find(|r| r.delta != formula || r.tensor_square != z_square)
        .map(|r| json!({"route": r.route, "delta": r.delta, "tensor_square": r.tensor_square}));
    let pi_a = inv.pi_set();
    let pi_delta = formula.pi_set();
    if pi_a != pi_delta {
        witness.get_or_insert_with(|| json!({"pi_group": pi_a, "pi_delta": pi_delta}));
    }
    let details = json!({"invariants": inv, "formula": formula, "routes": routes, "pi": pi_a});
    verdict_of(Claim::DeltaFormula, &instance, witness, details)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta_of(pair: &ActionPair) -> EtaGroup {
        construct_eta(pair, 100_000).unwrap()
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(Claim::from_id(c.id()), Some(c));
            assert_eq!(serde_json::to_value(c).unwrap(), json!(c.id()));
        }
        assert_eq!(Claim::from_id("nope"), None);
    }

    #[test]
    fn c2_trivial_identity_counts() {
        let c2 = FiniteGroup::builtin("C2").unwrap();
        let e = eta_of(&ActionPair::trivial(&c2, &c2));
        let r = commutator_identities(&e, "x");
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.details["derivation_tuples"], 16);
        assert_eq!(r.details["conjugation_tuples"], 16);
    }

    #[test]
    fn trivial_group_is_vacuous() {
        let one = FiniteGroup::trivial();
        let e = eta_of(&ActionPair::conjugation(&one));
        for r in [commutator_identities(&e, "1"), eta_relations(&e, "1"), tensor_normal_subset(&e, "1")] {
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
        let r = finiteness_machinery(&e, "1", &[0], &[0]);
        assert_eq!(r.verdict, Verdict::Pass);
        let r = centralizer_bound(&e, "1", &[0], &[0]);
        assert_eq!(r.details["max_index"], 1);
    }

    #[test]
    fn abelian_trivial_machinery_hypotheses_hold() {
        let g = FiniteGroup::builtin("C2xC4").unwrap();
        let e = eta_of(&ActionPair::trivial(&g, &g));
        let all: Vec<usize> = (0..g.order()).collect();
        let r = finiteness_machinery(&e, "x", &all, &all);
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert_eq!(r.details["tensor_subgroup_abelian"], true);
        assert_eq!(r.details["k_centralizes_tensor_subgroup"], true);
        let r = centralizer_bound(&e, "x", &all, &all);
        assert_eq!(r.details["max_index"], 1);
    }

    #[test]
    fn s3_machinery_and_bound() {
        let g = FiniteGroup::builtin("S3").unwrap();
        let nu = construct_nu(&g, 100_000).unwrap();
        for choice in nu_subgroup_choices(&g) {
            let r = finiteness_machinery(nu.eta(), "s3", &choice.n, &choice.k);
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
            let r = centralizer_bound(nu.eta(), "s3", &choice.n, &choice.k);
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn non_invariant_subgroups_fail_with_witness() {
        let g = FiniteGroup::builtin("S3").unwrap();
        let nu = construct_nu(&g, 100_000).unwrap();
        let t = (0..6).find(|&a| g.element_order(a) == 2).unwrap();
        let all: Vec<usize> = (0..6).collect();
        let r = finiteness_machinery(nu.eta(), "s3", &[g.identity(), t], &all);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witness.is_some());
    }

    #[test]
    fn incompatible_pair_is_rejected() {
        let corpus = Corpus::builtin();
        let r = run_incompatible_instance(&corpus.incompatible[0], &VerifyOptions::default());
        assert_eq!(r[0].verdict, Verdict::Pass);
        assert_eq!(r[0].details["refused_by_eta"], true);
        assert!(r[0].details["failing_triples"].as_u64().unwrap() > 0);
    }

    #[test]
    fn delta_routes_agree_on_small_groups() {
        for f in [&[][..], &[2], &[2, 2], &[2, 4], &[3, 3]] {
            let inv = AbelianInvariants::from_cyclic_orders(f);
            let routes = delta_routes(&inv, 100_000).unwrap();
            assert!(routes.len() >= 2, "{f:?}");
            for r in &routes {
                assert_eq!(r.delta, inv.delta_of_abelian(), "{f:?} {}", r.route);
            }
        }
    }

    #[test]
    fn forced_overflow_is_skipped() {
        let corpus = Corpus {
            groups: vec![NamedGroup { name: "D8".into(), group: FiniteGroup::builtin("D8").unwrap() }],
            ..Corpus::default()
        };
        let options = VerifyOptions { max_cosets: 10, ..VerifyOptions::default() };
        let reports = run_corpus(&corpus, &options);
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| r.verdict == Verdict::Skipped));
        assert!(reports[0].details["cosets_defined"].as_u64().unwrap() >= 10);
    }

    #[test]
    fn filter_and_empty_corpus() {
        assert!(run_corpus(&Corpus::default(), &VerifyOptions::default()).is_empty());
        let corpus = Corpus {
            groups: vec![NamedGroup { name: "C3".into(), group: FiniteGroup::builtin("C3").unwrap() }],
            ..Corpus::default()
        };
        let options = VerifyOptions { filter: vec![Claim::CommutatorIdentities], ..VerifyOptions::default() };
        let reports = run_corpus(&corpus, &options);
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].claim, Claim::CommutatorIdentities);
    }
}
