//! JSON reports printed on standard output. Field order is fixed by the struct
//! definitions, so identical inputs give identical bytes.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::Value;

use tensorial_core::abelian::SmithForm;
use tensorial_core::action::{check_compatibility, CompatFailure};
use tensorial_core::eta::{construct_eta, trivial_action_baseline, DecompositionReport, RelatorCounts};
use tensorial_core::input::{GroupSpec, PairSpec, SCHEMA_VERSION};
use tensorial_core::nu::{construct_nu, DerivedReport, MapsReport, PiReport};
use tensorial_core::{smith_normal_form, AbelianInvariants, ActionPair, FiniteGroup, IntMatrix};

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct TensorOrders {
    pub g: u64,
    pub h: u64,
    pub eta: u64,
    pub tensor: u64,
}

#[derive(Debug, Serialize)]
pub struct Relators {
    #[serde(flatten)]
    pub counts: RelatorCounts,
    pub total: usize,
}

#[derive(Debug, Serialize)]
pub struct Baseline {
    /// `G^ab (x)_Z H^ab`
    pub invariants: AbelianInvariants,
    pub agrees: bool,
}

#[derive(Debug, Serialize)]
pub struct TensorReport {
    pub schema: u32,
    pub command: &'static str,
    pub input: PairSpec,
    pub orders: TensorOrders,
    pub tensor_invariants: AbelianInvariants,
    /// number of distinct elements `g (x) h`
    pub tensor_set_size: usize,
    pub cosets: u64,
    pub relators: Relators,
    pub decomposition: DecompositionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_baseline: Option<Baseline>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn tensor(spec: &PairSpec, pair: &ActionPair, max_cosets: usize) -> Result<TensorReport, CliError> {
    let eta = construct_eta(pair, max_cosets)?;
    let all_g: Vec<usize> = (0..pair.g().order()).collect();
    let all_h: Vec<usize> = (0..pair.h().order()).collect();
    let tensor_set_size = eta.tensor_set(&all_g, &all_h)?.len();
    let tensor_invariants = eta.tensor_invariants();
    let trivial_baseline = pair.is_trivial().then(|| {
        let invariants = trivial_action_baseline(pair.g(), pair.h());
        Baseline { agrees: invariants == tensor_invariants, invariants }
    });
    let counts = eta.relator_counts();
    Ok(TensorReport {
        schema: SCHEMA_VERSION,
        command: "tensor",
        input: spec.clone(),
        orders: TensorOrders {
            g: pair.g().order() as u64,
            h: pair.h().order() as u64,
            eta: eta.carrier().order(),
            tensor: eta.tensor_subgroup().order(),
        },
        tensor_invariants,
        tensor_set_size,
        cosets: eta.cosets(),
        relators: Relators { counts, total: counts.total() },
        decomposition: eta.check_decomposition(),
        trivial_baseline,
        timing_ms: None,
    })
}

#[derive(Debug, Serialize)]
pub struct NuOrders {
    pub group: u64,
    pub nu: u64,
    pub tensor_square: u64,
    pub delta: u64,
    pub mu: u64,
    pub derived: u64,
    pub nu_derived: u64,
}

#[derive(Debug, Serialize)]
pub struct NuInvariants {
    pub abelianization: AbelianInvariants,
    /// present only when the tensor square is abelian
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tensor_square: Option<AbelianInvariants>,
    pub delta: AbelianInvariants,
    pub mu: AbelianInvariants,
}

#[derive(Debug, Serialize)]
pub struct NuChecks {
    pub maps: MapsReport,
    pub derived: DerivedReport,
    pub pi: PiReport,
    /// for abelian `G`: the closed formula for `Delta(G)` against the computed subgroup
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_formula: Option<Baseline>,
}

impl NuChecks {
    pub fn all_passed(&self) -> bool {
        self.maps.passed()
            && self.derived.passed()
            && self.pi.passed()
            && self.delta_formula.as_ref().is_none_or(|b| b.agrees)
    }
}

#[derive(Debug, Serialize)]
pub struct NuReport {
    pub schema: u32,
    pub command: &'static str,
    pub input: GroupSpec,
    pub orders: NuOrders,
    pub invariants: NuInvariants,
    pub pi_group: BTreeSet<u64>,
    pub pi_tensor_square: BTreeSet<u64>,
    pub checks: NuChecks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

pub fn nu(spec: &GroupSpec, group: &FiniteGroup, max_cosets: usize) -> Result<NuReport, CliError> {
    let nu = construct_nu(group, max_cosets)?;
    let internal = |e: tensorial_core::PermError| CliError::Other(e.to_string());
    let maps = nu.check_maps().map_err(internal)?;
    let derived = nu.check_derived_decomposition().map_err(internal)?;
    let pi = nu.periodicity_and_pi();
    let tensor_group = nu.eta().tensor_subgroup();
    let tensor_is_abelian = tensor_group.derived_subgroup().is_trivial();
    let delta_invariants = nu.delta_invariants();
    let delta_formula = group.is_abelian().then(|| {
        let invariants = group.abelian_invariants().delta_of_abelian();
        Baseline { agrees: invariants == delta_invariants, invariants }
    });
    Ok(NuReport {
        schema: SCHEMA_VERSION,
        command: "nu",
        input: spec.clone(),
        orders: NuOrders {
            group: group.order() as u64,
            nu: nu.eta().carrier().order(),
            tensor_square: tensor_group.order(),
            delta: nu.delta().order(),
            mu: nu.mu().order(),
            derived: nu.derived_order(),
            nu_derived: derived.nu_derived_order,
        },
        invariants: NuInvariants {
            abelianization: group.abelian_invariants(),
            tensor_square: tensor_is_abelian.then(|| nu.tensor_invariants()),
            delta: delta_invariants,
            mu: nu.mu().abelian_invariants(),
        },
        pi_group: pi.pi_group.clone(),
        pi_tensor_square: pi.pi_tensor.clone(),
        checks: NuChecks { maps, derived, pi, delta_formula },
        timing_ms: None,
    })
}

#[derive(Debug, Serialize)]
pub struct CompatOutput {
    pub schema: u32,
    pub command: &'static str,
    pub input: PairSpec,
    pub compatible: bool,
    pub triples_checked: u64,
    pub failure_count: usize,
    /// the first few failing triples, as element indices
    pub failures: Vec<CompatFailure>,
}

const MAX_LISTED_FAILURES: usize = 16;

pub fn compat(spec: &PairSpec, pair: &ActionPair) -> CompatOutput {
    let report = check_compatibility(pair);
    CompatOutput {
        schema: SCHEMA_VERSION,
        command: "compat",
        input: spec.clone(),
        compatible: report.is_compatible(),
        triples_checked: report.triples_checked,
        failure_count: report.failures.len(),
        failures: report.failures.into_iter().take(MAX_LISTED_FAILURES).collect(),
    }
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
fn int_value(x: &impl ToString) -> Value {
    let s = x.to_string();
    match s.parse::<i64>() {
        Ok(n) => Value::from(n),
        Err(_) => Value::String(s),
    }
}

fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(int_value).collect())).collect())
}

#[derive(Debug, Serialize)]
pub struct SnfOutput {
    pub schema: u32,
    pub command: &'static str,
    pub diagonal: Vec<Value>,
    /// nonzero diagonal entries other than 1, i.e. the torsion of the cokernel
    pub invariant_factors: Vec<Value>,
    pub free_rank: usize,
    pub u: Value,
    pub v: Value,
    /// `U * M * V` equals the diagonal matrix
    pub audit: bool,
}

pub fn snf(m: &IntMatrix) -> SnfOutput {
    let SmithForm { diagonal, u, v } = smith_normal_form(m);
    let form = SmithForm { diagonal: diagonal.clone(), u: u.clone(), v: v.clone() };
    let audit = u.mul(m).mul(&v) == form.diagonal_matrix();
    let zero_count = diagonal.iter().filter(|d| d.to_string() == "0").count();
    let free_rank = m.cols() - (diagonal.len() - zero_count);
    let invariant_factors = diagonal
        .iter()
        .map(int_value)
        .filter(|d| !matches!(d.as_i64(), Some(-1..=1)))
        .collect();
    SnfOutput {
        schema: SCHEMA_VERSION,
        command: "abelian snf",
        diagonal: diagonal.iter().map(int_value).collect(),
        invariant_factors,
        free_rank,
        u: matrix_value(&u),
        v: matrix_value(&v),
        audit,
    }
}

#[derive(Debug, Serialize)]
pub struct ZTensorOutput {
    pub schema: u32,
    pub command: &'static str,
    pub a: AbelianInvariants,
    pub b: AbelianInvariants,
    pub tensor: AbelianInvariants,
    pub order: u64,
}

pub fn z_tensor(a: &AbelianInvariants, b: &AbelianInvariants) -> ZTensorOutput {
    let tensor = a.z_tensor(b);
    ZTensorOutput {
        schema: SCHEMA_VERSION,
        command: "abelian tensor",
        a: a.clone(),
        b: b.clone(),
        order: tensor.order(),
        tensor,
    }
}

#[derive(Debug, Serialize)]
pub struct DeltaOutput {
    pub schema: u32,
    pub command: &'static str,
    pub group: AbelianInvariants,
    pub tensor_square: AbelianInvariants,
    pub delta: AbelianInvariants,
    pub order: u64,
}

pub fn delta(a: &AbelianInvariants) -> DeltaOutput {
    let delta = a.delta_of_abelian();
    DeltaOutput {
        schema: SCHEMA_VERSION,
        command: "abelian delta",
        group: a.clone(),
        tensor_square: a.z_tensor(a),
        order: delta.order(),
        delta,
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsOutput {
    pub schema: u32,
    pub command: &'static str,
    pub input: GroupSpec,
    pub order: u64,
    pub is_abelian: bool,
    pub derived_order: u64,
    pub abelianization: AbelianInvariants,
}

pub fn invariants(spec: &GroupSpec, group: &FiniteGroup) -> InvariantsOutput {
    InvariantsOutput {
        schema: SCHEMA_VERSION,
        command: "abelian invariants",
        input: spec.clone(),
        order: group.order() as u64,
        is_abelian: group.is_abelian(),
        derived_order: group.derived_subgroup().len() as u64,
        abelianization: group.abelian_invariants(),
    }
}
