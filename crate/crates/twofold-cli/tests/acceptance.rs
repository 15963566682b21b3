//! Release gate: every criterion below must hold before the toolkit ships.
//! The single test prints one pass/fail line per criterion and fails if any
//! criterion fails, keeping the full list visible in the output.

use std::f64::consts::SQRT_2;
use std::process::Command;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;

use twofold::cartan::{
    block_decompose, covariant_trace, hilbert_inner, indefinite_inner, lower_index, metric4,
    outer_projector, outer_projector_intrinsic, project, raise_index, sector_hilbert_inner,
    sector_inner, sector_metric, sector_projector, swap_metric4, CartanVector, Restriction,
    Sector, SectorVector,
};
use twofold::correlations::{
    diagonalize_primed, invariance_report, transform_amplitude_tensor, transform_observable,
    FrameTransform, TransformMode,
};
use twofold::density::{
    compose, composite_contraction, composite_density, composite_trace, density_expectation,
    density_from_state, entropy, maximally_mixed, signed_value, unit_factor,
};
use twofold::group::{
    conversion_inverse, conversion_matrix, convert, poincare, unitary_poincare,
    verify_membership, w_to_translation, DynElement, MembershipReport, Realization,
};
use twofold::measurement::{
    completeness_check, measure_probabilities, measurement_pair, orthogonality_residual,
    project_state, reduce_state, spectral_projectors,
};
use twofold::numerics::{cr, C64, CMat2, CMat4, IM, ONE, ZERO};
use twofold::observables::{
    charge_square_entries, conjugation_identities, expectation, make_charge,
    make_charge_conjugation, make_energy, make_polarization, make_spin, make_total_energy,
    make_virtual, EnergyBranch,
};
use twofold::sampling::{
    random_admissible_w, random_complex, random_cvec2, random_density, random_dyn_element,
    random_lorentz_param, random_observable, random_pair_state, random_su2, random_translation,
    random_unitary2, seeded_rng,
};
use twofold::states::{born_probabilities, evolve, EvolutionOperator};

const SECTORS: [Sector; 2] = [Sector::Plus, Sector::Minus];
const TIGHT: f64 = 1e-12;
const LOOSE: f64 = 1e-10;

type Outcome = Result<(), String>;

struct Criterion {
    name: &'static str,
    run: fn() -> Outcome,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { name: "canonical matrices reproduce exactly", run: canonical_matrices },
        Criterion { name: "metric identities hold at tight tolerance", run: metric_identities },
        Criterion { name: "random group elements verify membership", run: group_membership },
        Criterion { name: "dressed elements sit in the unitary intersection", run: unitary_intersection },
        Criterion { name: "charge-conjugation ledger closes exactly", run: conjugation_ledger },
        Criterion { name: "state norm and weight laws hold", run: state_laws },
        Criterion { name: "densities carry the expected entropies", run: density_entropies },
        Criterion { name: "composite sign law matches the dense oracle", run: sign_law },
        Criterion { name: "measurements are orthogonal, complete and repeatable", run: measurement_laws },
        Criterion { name: "frame correlations hold with working negative controls", run: frame_correlations },
        Criterion { name: "command-line reports are deterministic", run: cli_determinism },
    ]
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for (k, criterion) in criteria().iter().enumerate() {
        match (criterion.run)() {
            Ok(()) => println!("criterion {:02}: PASS - {}", k + 1, criterion.name),
            Err(msg) => {
                println!("criterion {:02}: FAIL - {} ({msg})", k + 1, criterion.name);
                failures.push(format!("criterion {:02} - {}: {msg}", k + 1, criterion.name));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}

// ---- shared helpers ----------------------------------------------------

fn m<T>(result: twofold::Result<T>) -> Result<T, String> {
    result.map_err(|e| format!("{e:?}: {e}"))
}

fn exact(label: &str, residual: f64) -> Outcome {
    if residual == 0.0 {
        Ok(())
    } else {
        Err(format!("{label}: residual {residual:.3e} is not exactly zero"))
    }
}

fn bounded(label: &str, residual: f64, bound: f64) -> Outcome {
    if residual <= bound {
        Ok(())
    } else {
        Err(format!("{label}: residual {residual:.3e} exceeds {bound:.0e}"))
    }
}

fn must_move(label: &str, residual: f64) -> Outcome {
    if residual > 1e-6 {
        Ok(())
    } else {
        Err(format!("negative control left {label} unmoved: {residual:.3e}"))
    }
}

fn random_vec4(rng: &mut ChaCha8Rng) -> CartanVector {
    let entries = [
        random_complex(rng),
        random_complex(rng),
        random_complex(rng),
        random_complex(rng),
    ];
    CartanVector::from_entries(entries).expect("finite entries")
}

fn random_mat2(rng: &mut ChaCha8Rng) -> CMat2 {
    CMat2::from_rows([*random_cvec2(rng).entries(), *random_cvec2(rng).entries()])
}

fn report_max(rep: &MembershipReport) -> f64 {
    rep.metric_residual
        .max(rep.det_deviation)
        .max(rep.block_plus)
        .max(rep.block_minus)
        .max(rep.block_cross)
        .max(rep.swap_skew.unwrap_or(0.0))
}

// Dense Kronecker-contraction oracle, independent of the library routes.
type Dense = Vec<Vec<C64>>;

fn dense_identity() -> Dense {
    vec![vec![ONE]]
}

fn dense_from2(mat: &CMat2) -> Dense {
    (0..2)
        .map(|r| (0..2).map(|c| mat.get(r, c)).collect())
        .collect()
}

fn dense_kron(a: &Dense, b: &Dense) -> Dense {
    let (na, nb) = (a.len(), b.len());
    let mut out = vec![vec![ZERO; na * nb]; na * nb];
    for (ra, row_a) in a.iter().enumerate() {
        for (ca, &va) in row_a.iter().enumerate() {
            for (rb, row_b) in b.iter().enumerate() {
                for (cb, &vb) in row_b.iter().enumerate() {
                    out[ra * nb + rb][ca * nb + cb] = va * vb;
                }
            }
        }
    }
    out
}

fn dense_pairing(amp: &[C64], big: &Dense) -> C64 {
    let mut acc = ZERO;
    for (r, &ar) in amp.iter().enumerate() {
        for (c, &ac) in amp.iter().enumerate() {
            acc += ar * big[r][c] * ac.conj();
        }
    }
    acc
}

fn metric_kron(factors: &[SectorVector]) -> Dense {
    let mut big = dense_identity();
    for f in factors {
        big = dense_kron(&big, &dense_from2(&sector_metric(f.sector())));
    }
    big
}

// ---- criterion 1: canonical matrices ------------------------------------

fn canonical_matrices() -> Outcome {
    exact(
        "diagonal metric",
        metric4().max_abs_diff(&CMat4::diag_re([1.0, 1.0, -1.0, -1.0])),
    )?;
    let mut swap = CMat4::zero();
    for k in 0..2 {
        swap.set(k, k + 2, ONE);
        swap.set(k + 2, k, ONE);
    }
    exact("swapped metric", swap_metric4().max_abs_diff(&swap))?;
    for s in SECTORS {
        let signed = CMat2::identity().scale(cr(s.sign()));
        exact("sector metric", sector_metric(s).max_abs_diff(&signed))?;
    }
    let mut proj_plus = CMat4::zero();
    let mut proj_minus = CMat4::zero();
    for k in 0..2 {
        proj_plus.set(k, k, ONE);
        proj_minus.set(k + 2, k + 2, ONE);
    }
    exact("plus projector", sector_projector(Sector::Plus).max_abs_diff(&proj_plus))?;
    exact("minus projector", sector_projector(Sector::Minus).max_abs_diff(&proj_minus))?;

    let q = 2.0 / 3.0;
    let e = 1.5;
    let charge = m(make_charge(q))?;
    exact(
        "charge covariant",
        charge.matrix4_covariant().max_abs_diff(&CMat4::diag_re([q, q, q, q])),
    )?;
    exact(
        "charge intrinsic",
        charge.matrix4_intrinsic().max_abs_diff(&CMat4::diag_re([q, q, -q, -q])),
    )?;

    let conj = make_charge_conjugation();
    let sx = CMat2::from_rows([[ZERO, ONE], [ONE, ZERO]]);
    for s in SECTORS {
        exact("conjugation block", conj.block(s).max_abs_diff(&sx))?;
        exact(
            "conjugation covariant block",
            conj.covariant_block(s).max_abs_diff(&sx.scale(cr(s.other().sign()))),
        )?;
        exact(
            "conjugation star block",
            conj.star_block(s).max_abs_diff(&sx.scale(cr(-1.0))),
        )?;
    }

    let spin = make_spin();
    exact(
        "spin covariant",
        spin.matrix4_covariant().max_abs_diff(&CMat4::diag_re([0.5, -0.5, -0.5, 0.5])),
    )?;
    exact(
        "spin intrinsic",
        spin.matrix4_intrinsic().max_abs_diff(&CMat4::diag_re([0.5, -0.5, 0.5, -0.5])),
    )?;

    let pol = make_polarization();
    exact(
        "polarization covariant",
        pol.matrix4_covariant().max_abs_diff(&CMat4::diag_re([1.0, -1.0, -1.0, 1.0])),
    )?;
    exact(
        "polarization intrinsic",
        pol.matrix4_intrinsic().max_abs_diff(&CMat4::diag_re([1.0, -1.0, 1.0, -1.0])),
    )?;

    let first = m(make_energy(e, EnergyBranch::First))?;
    exact(
        "energy first branch",
        first.matrix4_covariant().max_abs_diff(&CMat4::diag_re([e, -e, e, -e])),
    )?;
    let second = m(make_energy(e, EnergyBranch::Second))?;
    exact(
        "energy second branch",
        second.matrix4_covariant().max_abs_diff(&CMat4::diag_re([-e, e, -e, e])),
    )?;
    let total = m(make_total_energy(e))?;
    exact(
        "total energy",
        total.matrix4_covariant().max_abs_diff(&CMat4::diag_re([3.0, -3.0, 3.0, -3.0])),
    )?;

    for s in SECTORS {
        let v = make_virtual(s);
        exact(
            "virtual covariant block",
            v.covariant_block().max_abs_diff(&sx.scale(cr(s.sign()))),
        )?;
        exact("virtual intrinsic block", v.intrinsic().max_abs_diff(&sx))?;
    }

    exact(
        "maximally mixed density",
        maximally_mixed(Sector::Plus).intrinsic().max_abs_diff(&CMat2::diag_re([0.5, 0.5])),
    )?;

    for s in SECTORS {
        for (k, p) in measurement_pair(s).iter().enumerate() {
            let mut cov = CMat2::zero();
            cov.set(k, k, cr(s.sign()));
            exact("measurement covariant", p.covariant().max_abs_diff(&cov))?;
            let mut int = CMat2::zero();
            int.set(k, k, ONE);
            exact("measurement intrinsic", p.intrinsic().max_abs_diff(&int))?;
        }
    }

    // The realization-conversion matrix carries half-root entries; those
    // are bound at 1e-12 while the zero pattern must be exact.
    let s2 = cr(0.5f64.sqrt());
    let mut expected = CMat4::zero();
    for k in 0..2 {
        expected.set(k, k, s2);
        expected.set(k, k + 2, s2.scale(-1.0));
        expected.set(k + 2, k, s2);
        expected.set(k + 2, k + 2, s2);
    }
    bounded("conversion entries", conversion_matrix().max_abs_diff(&expected), TIGHT)
}

// ---- criterion 2: metric identities --------------------------------------

fn metric_identities() -> Outcome {
    let eye4 = CMat4::identity();
    exact("diagonal metric involution", (metric4() * metric4()).max_abs_diff(&eye4))?;
    exact("swapped metric involution", (swap_metric4() * swap_metric4()).max_abs_diff(&eye4))?;
    let conv = conversion_matrix();
    let conv_inv = conversion_inverse();
    bounded("conversion orthogonality", (conv * conv_inv).max_abs_diff(&eye4), TIGHT)?;
    bounded(
        "conversion intertwines the metrics",
        (conv_inv * swap_metric4() * conv).max_abs_diff(&metric4()),
        TIGHT,
    )?;
    for s in SECTORS {
        let p = sector_projector(s);
        exact("projector idempotence", (p * p).max_abs_diff(&p))?;
        exact("projector pseudo-hermiticity", (p * metric4()).hermiticity_residual())?;
        exact("projector-metric commutation", (p * metric4() - metric4() * p).max_abs())?;
    }

    let mut rng = seeded_rng(0xACC2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let x = random_vec4(&mut rng);
        let y = random_vec4(&mut rng);
        // The indefinite pairing is the Hilbert pairing against the
        // metric image of the second argument.
        let y_lowered = CartanVector::new(*y.components() * metric4());
        worst = worst.max((indefinite_inner(&x, &y) - hilbert_inner(&x, &y_lowered)).norm());
        // Both pairings split over the sectors, and the split reassembles.
        let xs = [project(&x, Sector::Plus), project(&x, Sector::Minus)];
        let ys = [project(&y, Sector::Plus), project(&y, Sector::Minus)];
        let definite = m(sector_hilbert_inner(&xs[0], &ys[0]))? + m(sector_hilbert_inner(&xs[1], &ys[1]))?;
        worst = worst.max((hilbert_inner(&x, &y) - definite).norm());
        let indefinite = m(sector_inner(&xs[0], &ys[0]))? + m(sector_inner(&xs[1], &ys[1]))?;
        worst = worst.max((indefinite_inner(&x, &y) - indefinite).norm());
        let back = m(CartanVector::assemble(&xs[0], &xs[1]))?;
        worst = worst.max(back.components().max_abs_diff(x.components()));
        // Entry relations between the intrinsic and covariant arrays.
        let a = random_mat2(&mut rng);
        for s in SECTORS {
            let cov = a * sector_metric(s);
            worst = worst.max((cov * sector_metric(s)).max_abs_diff(&a));
            let r = Restriction::new(s, a, "probe");
            worst = worst.max(r.covariant().max_abs_diff(&cov));
            worst = worst.max(r.adjoint_entries().max_abs_diff(&cov));
            let v = SectorVector::new(s, random_cvec2(&mut rng));
            let raised = raise_index(&lower_index(&v), v.sector());
            worst = worst.max(raised.components().max_abs_diff(v.components()));
            let dyad = outer_projector(&v);
            worst = worst
                .max(outer_projector_intrinsic(&v).max_abs_diff(&(sector_metric(s) * dyad)));
            worst = worst.max((covariant_trace(&dyad, s) - m(sector_inner(&v, &v))?).norm());
        }
    }
    bounded("sampled identities over 1000 draws", worst, TIGHT)
}

// ---- criterion 3: group membership ----------------------------------------

fn group_membership() -> Outcome {
    let mut rng = seeded_rng(0xACC3);
    let started = Instant::now();
    let mut membership = 0.0f64;
    let mut conversion = 0.0f64;
    for _ in 0..500 {
        let param = m(random_lorentz_param(&mut rng))?;
        let shift = random_translation(&mut rng);
        let swap_el = poincare(&param, &shift, Realization::Swap);
        let diag_el = poincare(&param, &shift, Realization::Diagonal);
        membership = membership.max(report_max(&verify_membership(&swap_el)));
        membership = membership.max(report_max(&verify_membership(&diag_el)));
        let converted = m(convert(&swap_el))?;
        conversion = conversion.max(converted.matrix().max_abs_diff(diag_el.matrix()));
        let back = m(convert(&converted))?;
        conversion = conversion.max(back.matrix().max_abs_diff(swap_el.matrix()));
    }
    let elapsed = started.elapsed().as_secs_f64();
    bounded("metric constraint and determinant across 500 elements", membership, LOOSE)?;
    bounded("realization conversion against the direct construction", conversion, LOOSE)?;
    if elapsed < 2.0 {
        Ok(())
    } else {
        Err(format!("membership sweep took {elapsed:.3}s, over the 2 s budget"))
    }
}

// ---- criterion 4: unitary intersection ------------------------------------

fn unitary_intersection() -> Outcome {
    let mut rng = seeded_rng(0xACC4);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let beta = random_su2(&mut rng);
        let w = random_admissible_w(&mut rng);
        let el = m(unitary_poincare(&beta, &w))?;
        worst = worst.max(report_max(&verify_membership(&el)));
        worst = worst.max(el.matrix().unitarity_residual());
    }
    bounded("unitarity and pseudo-unitarity across 500 elements", worst, LOOSE)?;

    // Time-axis image: block determinants (i, -i), time shift sqrt(2).
    let time = m(unitary_poincare(&CMat2::identity(), &CMat2::identity()))?;
    let blocks = block_decompose(time.matrix());
    bounded("time-axis plus-block determinant", (blocks.pp.det() - IM).norm(), TIGHT)?;
    bounded("time-axis minus-block determinant", (blocks.mm.det() + IM).norm(), TIGHT)?;
    let t = m(w_to_translation(&CMat2::identity()))?;
    bounded("time-axis shift component", (t[0] - SQRT_2).abs(), TIGHT)?;
    bounded(
        "time-axis spatial components",
        t[1].abs().max(t[2].abs()).max(t[3].abs()),
        TIGHT,
    )?;

    // Reflection image with determinant -1: unit block determinants and a
    // purely spatial shift.
    let mirror = CMat2::diag_re([1.0, -1.0]);
    bounded("reflection image determinant", (mirror.det() + ONE).norm(), TIGHT)?;
    let third = m(unitary_poincare(&CMat2::identity(), &mirror))?;
    let blocks = block_decompose(third.matrix());
    bounded("reflection plus-block determinant", (blocks.pp.det() - ONE).norm(), TIGHT)?;
    bounded("reflection minus-block determinant", (blocks.mm.det() - ONE).norm(), TIGHT)?;
    let t = m(w_to_translation(&mirror))?;
    bounded("reflection time component", t[0].abs(), TIGHT)?;
    bounded("reflection third-axis component", (t[3] - SQRT_2).abs(), TIGHT)
}

// ---- criterion 5: conjugation ledger ---------------------------------------

fn conjugation_ledger() -> Outcome {
    let conj = make_charge_conjugation();
    exact("conjugation identity ledger", conjugation_identities(&conj).max_residual())?;
    for q in [1.0 / 3.0, 2.0 / 3.0, 1.0] {
        let entries = m(charge_square_entries(q, &conj))?;
        for (k, s) in SECTORS.iter().enumerate() {
            let expected = sector_metric(*s).scale(cr(-(q * q)));
            exact(
                "squared charge-conjugation alternation",
                entries[k].max_abs_diff(&expected),
            )?;
        }
    }
    Ok(())
}

// ---- criterion 6: state laws ------------------------------------------------

fn state_laws() -> Outcome {
    let mut rng = seeded_rng(0xACC6);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let st = random_pair_state(&mut rng);
        worst = worst.max((st.hilbert_norm_sq() - 2.0).abs());
        worst = worst.max(st.indefinite_norm().norm());
        for s in SECTORS {
            worst = worst.max((st.sector_norm(s) - cr(s.sign())).norm());
            let (w0, w1) = born_probabilities(&st, s);
            worst = worst.max((w0 + w1 - 1.0).abs());
        }
        let op = m(EvolutionOperator::new(
            random_unitary2(&mut rng),
            random_unitary2(&mut rng),
            0.0,
            1.0,
        ))?;
        let out = evolve(&st, &op);
        worst = worst.max((out.hilbert_norm_sq() - 2.0).abs());
        worst = worst.max(out.indefinite_norm().norm());
        for s in SECTORS {
            worst = worst.max((out.sector_norm(s) - cr(s.sign())).norm());
        }
    }
    bounded("norm and weight laws across 1000 states", worst, TIGHT)
}

// ---- criterion 7: densities and entropies ------------------------------------

fn density_entropies() -> Outcome {
    let mut rng = seeded_rng(0xACC7);
    let mut pure_worst = 0.0f64;
    let mut route_worst = 0.0f64;
    for _ in 0..200 {
        let st = random_pair_state(&mut rng);
        for s in SECTORS {
            let d = m(density_from_state(&st, s))?;
            pure_worst = pure_worst.max(m(entropy(&d))?.abs());
            let a = m(random_observable(&mut rng))?;
            route_worst = route_worst
                .max((m(density_expectation(&d, &a))? - m(expectation(&a, &st, s))?).abs());
        }
    }
    bounded("pure-state entropy", pure_worst, TIGHT)?;
    for s in SECTORS {
        bounded(
            "maximally mixed entropy",
            (m(entropy(&maximally_mixed(s)))? - 1.0).abs(),
            TIGHT,
        )?;
    }
    bounded("density route against the state route", route_worst, TIGHT)?;

    let mut trace_worst = 0.0f64;
    for n_plus in 0..=6usize {
        for n_minus in 0..=(6 - n_plus) {
            if n_plus + n_minus == 0 {
                continue;
            }
            let mut factors = Vec::with_capacity(n_plus + n_minus);
            for k in 0..(n_plus + n_minus) {
                let s = if k < n_plus { Sector::Plus } else { Sector::Minus };
                factors.push(m(unit_factor(s, random_cvec2(&mut rng)))?);
            }
            let cd = m(composite_density(&m(compose(factors))?))?;
            trace_worst = trace_worst.max((composite_trace(&cd) - 1.0).abs());
        }
    }
    bounded("composite trace over every shape up to six slots", trace_worst, TIGHT)
}

// ---- criterion 8: composite sign law ------------------------------------------

fn sign_law() -> Outcome {
    for n_plus in 0..=3usize {
        for n_minus in 0..=3usize {
            let n = n_plus + n_minus;
            if n == 0 {
                continue;
            }
            for bits in 0..(1usize << n) {
                let mut factors = Vec::with_capacity(n);
                for k in 0..n {
                    let s = if k < n_plus { Sector::Plus } else { Sector::Minus };
                    factors.push(SectorVector::basis(s, (bits >> (n - 1 - k)) & 1));
                }
                let cs = m(compose(factors))?;
                let cd = m(composite_density(&cs))?;
                let sign = if n_minus % 2 == 0 { ONE } else { ONE.scale(-1.0) };
                exact(
                    "factorized signed value",
                    (m(signed_value(&cd, &cs))? - sign).norm(),
                )?;
                // Independent oracle: contract the amplitude tensor against
                // the Kronecker product of the sector metrics.
                let big = metric_kron(cs.factors());
                exact(
                    "dense metric contraction",
                    (dense_pairing(cs.amplitude(), &big) - sign).norm(),
                )?;
                // Replacing one antiparticle metric with the identity flips
                // the sign exactly once.
                if n_minus > 0 {
                    let mut arrays: Vec<CMat2> =
                        cs.factors().iter().map(|f| sector_metric(f.sector())).collect();
                    arrays[n_plus] = CMat2::identity();
                    let mut big = dense_identity();
                    for a in &arrays {
                        big = dense_kron(&big, &dense_from2(a));
                    }
                    let oracle = dense_pairing(cs.amplitude(), &big);
                    exact(
                        "identity-slot contraction",
                        (oracle - sign.scale(-1.0)).norm(),
                    )?;
                    let library = m(composite_contraction(&cs, &arrays))?;
                    exact("library route against the oracle", (library - oracle).norm())?;
                }
            }
        }
    }
    Ok(())
}

// ---- criterion 9: measurement laws ---------------------------------------------

fn measurement_laws() -> Outcome {
    for s in SECTORS {
        exact("orthogonality residual", orthogonality_residual(s))?;
        let pair = measurement_pair(s);
        for j in 0..2 {
            for k in 0..2 {
                let intrinsic = pair[j].intrinsic() * pair[k].intrinsic();
                let expected_int = if j == k { pair[j].intrinsic() } else { CMat2::zero() };
                exact("intrinsic projector products", intrinsic.max_abs_diff(&expected_int))?;
                let covariant = pair[j].covariant() * sector_metric(s) * pair[k].covariant();
                let expected_cov = if j == k { pair[j].covariant() } else { CMat2::zero() };
                exact(
                    "metric-inserted covariant products",
                    covariant.max_abs_diff(&expected_cov),
                )?;
            }
        }
    }

    let mut rng = seeded_rng(0xACC9);
    let mut completeness = 0.0f64;
    for _ in 0..200 {
        for s in SECTORS {
            let d = m(random_density(&mut rng, s))?;
            completeness = completeness.max((completeness_check(&d) - 1.0).abs());
        }
    }
    bounded("completeness across random densities", completeness, TIGHT)?;

    for _ in 0..200 {
        let st = random_pair_state(&mut rng);
        for s in SECTORS {
            let (w0, w1) = born_probabilities(&st, s);
            for (outcome, weight) in [(0usize, w0), (1usize, w1)] {
                if weight <= 1e-6 {
                    continue;
                }
                let reduced = m(reduce_state(&st, s, outcome))?;
                let collapsed = m(st.with_piece(&reduced))?;
                let (p0, p1) = m(measure_probabilities(&collapsed, s))?;
                let probs = [p0, p1];
                exact("repeat probability", (probs[outcome] - 1.0).abs())?;
                exact("excluded outcome probability", probs[1 - outcome].abs())?;
            }
        }
    }

    // A fully degenerate spectrum yields a single rank-two projector that
    // reduces nothing.
    let charge = m(make_charge(0.5))?;
    for s in SECTORS {
        let projectors = m(spectral_projectors(&charge, s))?;
        if projectors.len() != 1 {
            return Err(format!(
                "degenerate spectrum produced {} projectors instead of one",
                projectors.len()
            ));
        }
        let p = &projectors[0];
        if p.rank != 2 {
            return Err(format!("degenerate projector has rank {} instead of 2", p.rank));
        }
        exact("degenerate projector matrix", p.matrix.max_abs_diff(&CMat2::identity()))?;
        let v = SectorVector::new(s, random_cvec2(&mut rng));
        exact(
            "degenerate projection fixes states",
            project_state(p, &v).components().max_abs_diff(v.components()),
        )?;
    }
    Ok(())
}

// ---- criterion 10: frame correlations --------------------------------------------

fn frame_correlations() -> Outcome {
    let mut rng = seeded_rng(0xACCA);
    let mut invariance = 0.0f64;
    let mut amplitude = 0.0f64;
    let mut determinant = 0.0f64;
    let energy = m(make_energy(2.0, EnergyBranch::First))?;
    for round in 0..200usize {
        let element = m(random_dyn_element(&mut rng))?;
        let ft = FrameTransform::new(element, TransformMode::OperatorInvariant);
        invariance = invariance.max(m(invariance_report(&ft))?.max_residual());

        // Amplitude pairings computed in either frame agree.
        let n_plus = round % 4;
        let mut factors = Vec::with_capacity(3);
        for k in 0..3 {
            let s = if k < n_plus { Sector::Plus } else { Sector::Minus };
            factors.push(m(unit_factor(s, random_cvec2(&mut rng)))?);
        }
        let cs = m(compose(factors))?;
        let original = dense_pairing(cs.amplitude(), &metric_kron(cs.factors()));
        let primed_amp = transform_amplitude_tensor(&cs, &ft);
        let mut primed_big = dense_identity();
        for f in cs.factors() {
            let u = ft.element.block(f.sector());
            let primed_metric = *u * sector_metric(f.sector()) * u.dagger();
            primed_big = dense_kron(&primed_big, &dense_from2(&primed_metric));
        }
        let primed = dense_pairing(&primed_amp, &primed_big);
        amplitude = amplitude.max((primed - original).norm());

        // Diagonalizing the carried energy block preserves the determinant.
        let carried = m(transform_observable(&energy, &ft))?;
        for (k, s) in SECTORS.iter().enumerate() {
            let (_, diag_cov) = m(diagonalize_primed(&carried.covariant[k], *s))?;
            determinant =
                determinant.max((diag_cov.det() - energy.covariant(*s).det()).norm());
        }
    }
    bounded("invariance report across 200 elements", invariance, LOOSE)?;
    bounded("amplitude pairings across frames", amplitude, LOOSE)?;
    bounded("diagonalization determinant preservation", determinant, LOOSE)?;

    // Negative controls: a non-unitary frame must break every law.
    let stretch_block = CMat2::diag_re([2.0, 0.5]);
    let stretch = DynElement::from_blocks_unchecked(stretch_block, stretch_block);
    let broken = FrameTransform::new(stretch, TransformMode::OperatorInvariant);
    let report = m(invariance_report(&broken))?;
    must_move("the basis grams", report.gram)?;
    must_move("operator traces", report.trace)?;
    must_move("commutators", report.commutator_fixed)?;
    must_move("degenerate blocks", report.degenerate_invariance)?;

    let cs = m(compose(vec![
        SectorVector::basis(Sector::Plus, 0),
        SectorVector::basis(Sector::Minus, 0),
    ]))?;
    let big = metric_kron(cs.factors());
    let original = dense_pairing(cs.amplitude(), &big);
    let moved = dense_pairing(&transform_amplitude_tensor(&cs, &broken), &big);
    must_move("amplitude pairings", (moved - original).norm())?;

    // A determinant-changing frame moves the diagonalized determinant.
    let scaling = DynElement::from_blocks_unchecked(
        CMat2::diag_re([2.0, 1.0]),
        CMat2::diag_re([2.0, 1.0]),
    );
    let u = scaling.block(Sector::Plus);
    let primed_cov = *u * energy.covariant(Sector::Plus) * u.dagger();
    let (_, diag_cov) = m(diagonalize_primed(&primed_cov, Sector::Plus))?;
    must_move(
        "the diagonalized determinant",
        (diag_cov.det() - energy.covariant(Sector::Plus).det()).norm(),
    )
}

// ---- criterion 11: command-line determinism ----------------------------------------

const DETERMINISM_SCENARIO: &str = r#"{
  "schema_version": 1,
  "seed": 2718,
  "state": { "pair": { "plus": [[0.6, 0.0], [0.0, 0.8]], "minus": [[0.6, 0.0], [0.8, 0.0]] } },
  "observables": [ { "kind": "spin" }, { "kind": "energy", "energy": 2.0, "branch": "first" } ],
  "frames": [
    { "beta": [[[0.6, 0.0], [0.8, 0.0]], [[-0.8, 0.0], [0.6, 0.0]]], "mode": "operator-invariant" }
  ],
  "measurements": [ { "slot": 0, "outcome": "sample" }, { "slot": 1, "outcome": "sample" } ]
}"#;

fn cli() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twofold"));
    // Keep runs hermetic: ambient overrides must not leak into the gate.
    cmd.env_remove("TWOFOLD_TOL").env_remove("TWOFOLD_INJECT_RESIDUAL");
    cmd
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let scenario_path = dir.path().join("scenario.json");
    std::fs::write(&scenario_path, DETERMINISM_SCENARIO).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for name in ["first.json", "second.json"] {
        let out = dir.path().join(name);
        let output = cli()
            .args(["scenario", "run"])
            .arg(&scenario_path)
            .arg("--out")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !output.status.success() {
            return Err(format!(
                "scenario run failed: {}",
                String::from_utf8_lossy(&output.stderr)
            ));
        }
        reports.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    if reports[0] != reports[1] {
        return Err("reports differ between identical seeded runs".into());
    }
    if reports[0].is_empty() {
        return Err("scenario reports are empty".into());
    }

    let verify = cli().arg("verify").output().map_err(|e| e.to_string())?;
    if verify.status.success() {
        Ok(())
    } else {
        Err(format!(
            "stock verification run failed:\n{}",
            String::from_utf8_lossy(&verify.stdout)
        ))
    }
}
