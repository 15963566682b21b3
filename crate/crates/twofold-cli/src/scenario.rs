//! Scenario parsing and deterministic execution.
//!
//! A scenario is a JSON document: a state (pair or composite), optional
//! observable evaluations, optional frame transforms, and optional
//! measurements whose outcomes are either fixed or sampled from a seeded
//! generator. Execution order is prepare, entropy accounting, observables,
//! frames, measurements; every step echoes its inputs, records its outputs
//! and attaches residuals for the invariants it exercises.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use twofold::cartan::Sector;
use twofold::correlations::{
    invariance_report, primed_components, primed_probabilities, transform_amplitude_tensor,
    FrameTransform, InvarianceReport, TransformMode,
};
use twofold::density::{
    compose, composite_density, composite_trace, density_from_state, embed_single, entropy,
    maximally_mixed, relative_mutual_entropies, signed_value, unit_factor, CompositeDensity,
    CompositeState,
};
use twofold::group::{dyn_element, Translation};
use twofold::measurement::{
    composite_measure, measure_probabilities, reduce_state, slot_probabilities,
};
use twofold::numerics::{c, CMat2, CVec2, C64};
use twofold::observables::{
    expectation, make_charge, make_energy, make_polarization, make_spin, make_total_energy,
    spectral_decomposition, EnergyBranch, Observable,
};
use twofold::sampling::seeded_rng;
use twofold::states::{born_probabilities, make_pair_state, PairState};

use crate::report::{CheckRecord, Report, StepRecord};

const SECTORS: [Sector; 2] = [Sector::Plus, Sector::Minus];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    #[serde(default)]
    pub seed: u64,
    pub state: StateSpec,
    #[serde(default)]
    pub observables: Vec<ObservableSpec>,
    #[serde(default)]
    pub frames: Vec<FrameSpec>,
    #[serde(default)]
    pub measurements: Vec<MeasurementSpec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    /// One normalized piece per sector, complex entries as `[re, im]`.
    Pair { plus: [[f64; 2]; 2], minus: [[f64; 2]; 2] },
    /// Ordered factors, every particle slot before every antiparticle slot.
    Composite { factors: Vec<FactorSpec> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub sector: String,
    pub components: [[f64; 2]; 2],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObservableSpec {
    Spin,
    Polarization,
    Charge { charge: f64 },
    Energy { energy: f64, branch: String },
    TotalEnergy { energy: f64 },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSpec {
    /// Special-unitary parameter block, rows of `[re, im]` entries.
    pub beta: [[[f64; 2]; 2]; 2],
    /// Optional translation 4-vector dressing the element; its matrix image
    /// must square to the identity (time component `sqrt(2)` with no spatial
    /// part, or a spatial part of squared length two with no time component).
    #[serde(default)]
    pub translation: Option<[f64; 4]>,
    /// `operator-invariant`, `matrix-invariant` or `both`.
    pub mode: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasurementSpec {
    pub slot: usize,
    pub outcome: OutcomeSpec,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutcomeSpec {
    Index(usize),
    Labeled(String),
}

pub struct ScenarioOutcome {
    pub report: Report,
    pub all_pass: bool,
}

enum Carrier {
    Pair(PairState),
    Composite(CompositeState),
}

struct Recorder {
    steps: Vec<StepRecord>,
    checks: Vec<CheckRecord>,
    tolerance: f64,
}

impl Recorder {
    fn push(
        &mut self,
        step: &str,
        inputs: Value,
        outputs: Value,
        residuals: Vec<(&str, &str, f64)>,
    ) {
        let index = self.steps.len();
        let records: Vec<CheckRecord> = residuals
            .into_iter()
            .map(|(name, law, residual)| CheckRecord {
                id: format!("scenario.step{index}.{name}"),
                law: law.to_string(),
                residual,
                tolerance: self.tolerance,
                pass: residual <= self.tolerance,
            })
            .collect();
        self.checks.extend(records.iter().cloned());
        self.steps.push(StepRecord {
            step: step.to_string(),
            inputs,
            outputs,
            residuals: records,
        });
    }
}

pub fn execute(text: &str, tolerance: f64) -> Result<ScenarioOutcome, String> {
    let spec: ScenarioFile =
        serde_json::from_str(text).map_err(|e| format!("ParseError: {e}"))?;
    if spec.schema_version != 1 {
        return Err(format!(
            "ParseError: unsupported schema_version {} (expected 1)",
            spec.schema_version
        ));
    }
    let mut rng = seeded_rng(spec.seed);
    let mut rec = Recorder { steps: Vec::new(), checks: Vec::new(), tolerance };

    let mut carrier = prepare(&spec, &mut rec)?;
    record_entropies(&carrier, &mut rec)?;
    for obs_spec in &spec.observables {
        record_observable(&carrier, obs_spec, &mut rec)?;
    }
    for frame_spec in &spec.frames {
        record_frame(&carrier, frame_spec, &mut rec)?;
    }
    for m in &spec.measurements {
        carrier = record_measurement(carrier, m, &mut rng, &mut rec)?;
    }

    let all_pass = rec.checks.iter().all(|r| r.pass);
    Ok(ScenarioOutcome { report: Report::new(rec.checks, rec.steps), all_pass })
}

fn prepare(spec: &ScenarioFile, rec: &mut Recorder) -> Result<Carrier, String> {
    let inputs = json!({
        "seed": spec.seed,
        "state": serde_json::to_value(&spec.state).expect("state spec serializes"),
    });
    match &spec.state {
        StateSpec::Pair { plus, minus } => {
            let st = make_pair_state(parse_cvec2(plus)?, parse_cvec2(minus)?)
                .map_err(module_err)?;
            let (bp0, bp1) = born_probabilities(&st, Sector::Plus);
            let (bm0, bm1) = born_probabilities(&st, Sector::Minus);
            let outputs = json!({
                "normalized_plus": cvec2_val(st.sector(Sector::Plus).components()),
                "normalized_minus": cvec2_val(st.sector(Sector::Minus).components()),
                "hilbert_norm_sq": st.hilbert_norm_sq(),
                "indefinite_norm": c_val(st.indefinite_norm()),
                "sector_norms": [
                    c_val(st.sector_norm(Sector::Plus)),
                    c_val(st.sector_norm(Sector::Minus)),
                ],
                "born_plus": [bp0, bp1],
                "born_minus": [bm0, bm1],
            });
            let norm_residual = (st.hilbert_norm_sq() - 2.0)
                .abs()
                .max(st.indefinite_norm().norm())
                .max((st.sector_norm(Sector::Plus) - c(1.0, 0.0)).norm())
                .max((st.sector_norm(Sector::Minus) + c(1.0, 0.0)).norm());
            let born_residual = (bp0 + bp1 - 1.0).abs().max((bm0 + bm1 - 1.0).abs());
            rec.push(
                "prepare",
                inputs,
                outputs,
                vec![
                    (
                        "norms",
                        "pair normalization: definite norm two, vanishing indefinite norm, signed unit sector norms",
                        norm_residual,
                    ),
                    ("born", "outcome weights sum to one in each sector", born_residual),
                ],
            );
            Ok(Carrier::Pair(st))
        }
        StateSpec::Composite { factors } => {
            let mut built = Vec::with_capacity(factors.len());
            for f in factors {
                built.push(
                    unit_factor(parse_sector(&f.sector)?, parse_cvec2(&f.components)?)
                        .map_err(module_err)?,
                );
            }
            let cs = compose(built).map_err(module_err)?;
            let cd = composite_density(&cs).map_err(module_err)?;
            let trace = composite_trace(&cd);
            let signed = signed_value(&cd, &cs).map_err(module_err)?;
            let mut slot_probs = Vec::with_capacity(cs.len());
            for slot in 0..cs.len() {
                let (p0, p1) = slot_probabilities(&cs, slot).map_err(module_err)?;
                slot_probs.push(json!([p0, p1]));
            }
            let amp_norm: f64 = cs.amplitude().iter().map(|z| z.norm_sqr()).sum();
            let outputs = json!({
                "len": cs.len(),
                "n_plus": cs.n_plus(),
                "n_minus": cs.n_minus(),
                "amplitude": amp_val(cs.amplitude()),
                "slot_probabilities": slot_probs,
                "trace": trace,
                "signed_value": c_val(signed),
            });
            let sign = if cs.n_minus() % 2 == 0 { 1.0 } else { -1.0 };
            rec.push(
                "prepare",
                inputs,
                outputs,
                vec![
                    ("amplitude-norm", "the amplitude tensor is normalized", (amp_norm - 1.0).abs()),
                    ("trace", "the composite density has unit trace", (trace - 1.0).abs()),
                    (
                        "signed-value",
                        "the metric-contracted value alternates with the antiparticle count",
                        (signed - c(sign, 0.0)).norm(),
                    ),
                ],
            );
            Ok(Carrier::Composite(cs))
        }
    }
}

fn record_entropies(carrier: &Carrier, rec: &mut Recorder) -> Result<(), String> {
    match carrier {
        Carrier::Pair(st) => {
            let sp = entropy(&density_from_state(st, Sector::Plus).map_err(module_err)?)
                .map_err(module_err)?;
            let sm = entropy(&density_from_state(st, Sector::Minus).map_err(module_err)?)
                .map_err(module_err)?;
            let outputs = json!({
                "entropy_plus": sp,
                "entropy_minus": sm,
                "maximally_mixed_reference": 1.0,
            });
            rec.push(
                "entropy",
                json!({}),
                outputs,
                vec![(
                    "purity",
                    "pure sector densities carry vanishing entropy",
                    sp.abs().max(sm.abs()),
                )],
            );
        }
        Carrier::Composite(cs) => {
            let cd = composite_density(cs).map_err(module_err)?;
            if cs.len() < 2 {
                let s = entropy(cd.factor(0).map_err(module_err)?).map_err(module_err)?;
                rec.push(
                    "entropy",
                    json!({}),
                    json!({ "entropy": s }),
                    vec![("purity", "pure factor densities carry vanishing entropy", s.abs())],
                );
                return Ok(());
            }
            let reference = CompositeDensity::new(
                cs.factors().iter().map(|f| maximally_mixed(f.sector())).collect(),
            )
            .map_err(module_err)?;
            let report = relative_mutual_entropies(&cd, &reference).map_err(module_err)?;
            let outputs = json!({
                "entropy": report.entropy_a,
                "reference_entropy": report.entropy_b,
                "relative_entropy_to_uniform": report.relative_entropy,
                "mutual_entropy": report.mutual_entropy_a,
                "subadditivity_gap": report.subadditivity_gap,
                "concavity_gap": report.concavity_gap,
            });
            let deficit =
                (report.relative_entropy - (cs.len() as f64 - report.entropy_a)).abs();
            let gaps = (-report.subadditivity_gap).max(-report.concavity_gap).max(0.0);
            rec.push(
                "entropy",
                json!({}),
                outputs,
                vec![
                    (
                        "uniform-deficit",
                        "relative entropy against the uniform reference equals the entropy deficit",
                        deficit,
                    ),
                    ("gaps", "subadditivity and mixing gaps are non-negative", gaps),
                ],
            );
        }
    }
    Ok(())
}

fn record_observable(
    carrier: &Carrier,
    spec: &ObservableSpec,
    rec: &mut Recorder,
) -> Result<(), String> {
    let a = build_observable(spec)?;
    let inputs = serde_json::to_value(spec).expect("observable spec serializes");
    let mut spectra = Vec::new();
    for s in SECTORS {
        let dec = spectral_decomposition(&a, s).map_err(module_err)?;
        spectra.push(json!([dec.eigenvalues[0], dec.eigenvalues[1]]));
    }
    match carrier {
        Carrier::Pair(st) => {
            let mut residual = 0.0f64;
            let mut values = Vec::new();
            for s in SECTORS {
                let value = expectation(&a, st, s).map_err(module_err)?;
                values.push(value);
                // Cross-check: the signed eigenvalue mixture gives the same
                // number.
                let dec = spectral_decomposition(&a, s).map_err(module_err)?;
                let phi = st.sector(s).components();
                let mixture: f64 = (0..2)
                    .map(|k| dec.eigenvalues[k] * phi.dot_conj(&dec.states[k]).norm_sqr())
                    .sum();
                residual = residual.max((value - s.sign() * mixture).abs());
            }
            let outputs = json!({
                "label": a.label(),
                "expectation_plus": values[0],
                "expectation_minus": values[1],
                "spectrum_plus": spectra[0],
                "spectrum_minus": spectra[1],
            });
            rec.push(
                "observable",
                inputs,
                outputs,
                vec![(
                    "mixture",
                    "expectations equal signed eigenvalue mixtures",
                    residual,
                )],
            );
        }
        Carrier::Composite(cs) => {
            let mut residual = 0.0f64;
            let mut values = Vec::new();
            for slot in 0..cs.len() {
                let value = embed_single(cs, slot, &a).map_err(module_err)?;
                residual = residual.max(value.im.abs());
                values.push(json!(value.re));
            }
            let outputs = json!({
                "label": a.label(),
                "slot_expectations": values,
                "spectrum_plus": spectra[0],
                "spectrum_minus": spectra[1],
            });
            rec.push(
                "observable",
                inputs,
                outputs,
                vec![(
                    "reality",
                    "single-slot embeddings of pseudo-Hermitian observables are real",
                    residual,
                )],
            );
        }
    }
    Ok(())
}

fn record_frame(
    carrier: &Carrier,
    spec: &FrameSpec,
    rec: &mut Recorder,
) -> Result<(), String> {
    let beta = parse_cmat2(&spec.beta);
    let shift_w: Option<CMat2> = match &spec.translation {
        Some(t) => Some(*Translation::from_components(*t).map_err(module_err)?.w()),
        None => None,
    };
    let element = dyn_element(&beta, shift_w.as_ref()).map_err(module_err)?;
    let mode = parse_mode(&spec.mode)?;
    let ft = FrameTransform::new(element, mode);
    let report = invariance_report(&ft).map_err(module_err)?;
    let inputs = serde_json::to_value(spec).expect("frame spec serializes");
    let mut outputs = json!({
        "invariance_report": invariance_val(&report),
        "max_residual": report.max_residual(),
        "reduction_deviation": report.reduction_deviation,
    });
    let map = outputs.as_object_mut().expect("object literal");
    match carrier {
        Carrier::Pair(st) => {
            for s in SECTORS {
                let key = match s {
                    Sector::Plus => "plus",
                    Sector::Minus => "minus",
                };
                let primed = primed_components(st, &ft, s);
                let probs = primed_probabilities(st, &ft, s);
                map.insert(format!("primed_components_{key}"), cvec2_val(&primed));
                map.insert(format!("primed_probabilities_{key}"), json!([probs[0], probs[1]]));
            }
        }
        Carrier::Composite(cs) => {
            let primed = transform_amplitude_tensor(cs, &ft);
            map.insert("primed_amplitude".to_string(), amp_val(&primed));
        }
    }
    rec.push(
        "frame",
        inputs,
        outputs,
        vec![(
            "invariance",
            "every frame-correlation law holds for this element",
            report.max_residual(),
        )],
    );
    Ok(())
}

fn record_measurement(
    carrier: Carrier,
    spec: &MeasurementSpec,
    rng: &mut ChaCha8Rng,
    rec: &mut Recorder,
) -> Result<Carrier, String> {
    let inputs = serde_json::to_value(spec).expect("measurement spec serializes");
    match carrier {
        Carrier::Pair(st) => {
            let sector = match spec.slot {
                0 => Sector::Plus,
                1 => Sector::Minus,
                k => {
                    return Err(format!(
                        "slot {k} is out of range for a pair state (0 particle, 1 antiparticle)"
                    ))
                }
            };
            let (p0, p1) = measure_probabilities(&st, sector).map_err(module_err)?;
            let (outcome, sampled) = resolve_outcome(&spec.outcome, p0, rng)?;
            let reduced = reduce_state(&st, sector, outcome).map_err(module_err)?;
            let collapsed = st.with_piece(&reduced).map_err(module_err)?;
            let (q0, q1) = measure_probabilities(&collapsed, sector).map_err(module_err)?;
            let repeat = [q0, q1];
            let outputs = json!({
                "probabilities": [p0, p1],
                "outcome": outcome,
                "sampled": sampled,
                "post_measurement_probabilities": [q0, q1],
            });
            rec.push(
                "measurement",
                inputs,
                outputs,
                vec![
                    ("normalization", "outcome probabilities sum to one", (p0 + p1 - 1.0).abs()),
                    (
                        "repeat",
                        "the observed outcome is certain after collapse",
                        (repeat[outcome] - 1.0).abs().max(repeat[1 - outcome].abs()),
                    ),
                ],
            );
            Ok(Carrier::Pair(collapsed))
        }
        Carrier::Composite(cs) => {
            let (p0, p1) = slot_probabilities(&cs, spec.slot).map_err(module_err)?;
            let (outcome, sampled) = resolve_outcome(&spec.outcome, p0, rng)?;
            let collapsed = composite_measure(&cs, spec.slot, outcome).map_err(module_err)?;
            let (q0, q1) = slot_probabilities(&collapsed, spec.slot).map_err(module_err)?;
            let repeat = [q0, q1];
            let outputs = json!({
                "probabilities": [p0, p1],
                "outcome": outcome,
                "sampled": sampled,
                "post_measurement_probabilities": [q0, q1],
            });
            rec.push(
                "measurement",
                inputs,
                outputs,
                vec![
                    ("normalization", "outcome probabilities sum to one", (p0 + p1 - 1.0).abs()),
                    (
                        "repeat",
                        "the observed outcome is certain after collapse",
                        (repeat[outcome] - 1.0).abs().max(repeat[1 - outcome].abs()),
                    ),
                ],
            );
            Ok(Carrier::Composite(collapsed))
        }
    }
}

fn resolve_outcome(
    spec: &OutcomeSpec,
    p0: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(usize, bool), String> {
    match spec {
        OutcomeSpec::Index(k) if *k < 2 => Ok((*k, false)),
        OutcomeSpec::Index(k) => Err(format!("outcome index {k} is out of range (0 or 1)")),
        OutcomeSpec::Labeled(s) if s == "sample" => {
            Ok((usize::from(rng.gen::<f64>() >= p0), true))
        }
        OutcomeSpec::Labeled(s) => Err(format!(
            "ParseError: outcome must be 0, 1 or \"sample\", got {s:?}"
        )),
    }
}

fn build_observable(spec: &ObservableSpec) -> Result<Observable, String> {
    match spec {
        ObservableSpec::Spin => Ok(make_spin()),
        ObservableSpec::Polarization => Ok(make_polarization()),
        ObservableSpec::Charge { charge } => make_charge(*charge).map_err(module_err),
        ObservableSpec::Energy { energy, branch } => {
            make_energy(*energy, parse_branch(branch)?).map_err(module_err)
        }
        ObservableSpec::TotalEnergy { energy } => make_total_energy(*energy).map_err(module_err),
    }
}

fn parse_branch(branch: &str) -> Result<EnergyBranch, String> {
    match branch {
        "first" => Ok(EnergyBranch::First),
        "second" => Ok(EnergyBranch::Second),
        other => Err(format!("ParseError: branch must be \"first\" or \"second\", got {other:?}")),
    }
}

fn parse_mode(mode: &str) -> Result<TransformMode, String> {
    match mode {
        "operator-invariant" => Ok(TransformMode::OperatorInvariant),
        "matrix-invariant" => Ok(TransformMode::MatrixInvariant),
        "both" => Ok(TransformMode::Both),
        other => Err(format!(
            "ParseError: mode must be \"operator-invariant\", \"matrix-invariant\" or \"both\", got {other:?}"
        )),
    }
}

fn parse_sector(s: &str) -> Result<Sector, String> {
    match s {
        "plus" => Ok(Sector::Plus),
        "minus" => Ok(Sector::Minus),
        other => Err(format!("ParseError: sector must be \"plus\" or \"minus\", got {other:?}")),
    }
}

fn parse_cvec2(entries: &[[f64; 2]; 2]) -> Result<CVec2, String> {
    CVec2::new([c(entries[0][0], entries[0][1]), c(entries[1][0], entries[1][1])])
        .map_err(module_err)
}

fn parse_cmat2(rows: &[[[f64; 2]; 2]; 2]) -> CMat2 {
    CMat2::from_rows([
        [c(rows[0][0][0], rows[0][0][1]), c(rows[0][1][0], rows[0][1][1])],
        [c(rows[1][0][0], rows[1][0][1]), c(rows[1][1][0], rows[1][1][1])],
    ])
}

fn invariance_val(report: &InvarianceReport) -> Value {
    json!({
        "gram": report.gram,
        "kernel": report.kernel,
        "projector": report.projector,
        "trace": report.trace,
        "commutator_fixed": report.commutator_fixed,
        "commutator_conjugated": report.commutator_conjugated,
        "measurement_entries": report.measurement_entries,
        "energy_diagonal": report.energy_diagonal,
        "expectation_transport": report.expectation_transport,
        "density_spectrum": report.density_spectrum,
        "conjugation_entries": report.conjugation_entries,
        "degenerate_invariance": report.degenerate_invariance,
        "reduction_deviation": report.reduction_deviation,
    })
}

pub fn module_err(e: twofold::Error) -> String {
    format!("{e:?}: {e}")
}

fn c_val(z: C64) -> Value {
    json!([z.re, z.im])
}

fn cvec2_val(v: &CVec2) -> Value {
    json!([c_val(v[0]), c_val(v[1])])
}

fn amp_val(amplitude: &[C64]) -> Value {
    Value::Array(amplitude.iter().map(|z| c_val(*z)).collect())
}
