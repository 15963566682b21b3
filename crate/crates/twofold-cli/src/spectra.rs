//! Plain-text printing of the canonical operator arrays.
//!
//! Entries that are exactly representable print in their shortest decimal
//! form; irrational entries print with twelve decimal digits.

use twofold::cartan::{metric4, sector_metric, swap_metric4, Sector};
use twofold::density::maximally_mixed;
use twofold::error::Error;
use twofold::group::{conversion_matrix, conversion_inverse};
use twofold::measurement::measurement_pair;
use twofold::numerics::{CMat2, CMat4, C64};
use twofold::observables::{
    make_charge, make_charge_conjugation, make_energy, make_polarization, make_spin,
    make_total_energy, make_virtual, EnergyBranch, Observable,
};

use crate::scenario::module_err;

const KINDS: &[&str] = &[
    "metric",
    "swap-metric",
    "sector-metrics",
    "conversion",
    "spin",
    "polarization",
    "charge",
    "energy",
    "total-energy",
    "conjugation",
    "virtual",
    "measurement",
    "mixed",
];

pub fn print_spectra(kind: &str, charge: f64, energy: f64, branch: &str) -> Result<(), String> {
    match kind {
        "metric" => print_mat4("indefinite pairing kernel", &metric4()),
        "swap-metric" => print_mat4("swapped-realization pairing kernel", &swap_metric4()),
        "sector-metrics" => {
            print_mat2("particle sector metric", &sector_metric(Sector::Plus));
            print_mat2("antiparticle sector metric", &sector_metric(Sector::Minus));
        }
        "conversion" => {
            print_mat4("realization conversion matrix", &conversion_matrix());
            print_mat4("realization conversion inverse", &conversion_inverse());
        }
        "spin" => print_observable(&make_spin()),
        "polarization" => print_observable(&make_polarization()),
        "charge" => print_observable(&make_charge(charge).map_err(module_err)?),
        "energy" => {
            let branch = match branch {
                "first" => EnergyBranch::First,
                "second" => EnergyBranch::Second,
                other => {
                    return Err(format!(
                        "branch must be \"first\" or \"second\", got {other:?}"
                    ))
                }
            };
            print_observable(&make_energy(energy, branch).map_err(module_err)?);
        }
        "total-energy" => print_observable(&make_total_energy(energy).map_err(module_err)?),
        "conjugation" => {
            let conj = make_charge_conjugation();
            for (s, name) in sector_names() {
                print_mat2(&format!("conjugation intrinsic block ({name})"), conj.block(s));
                print_mat2(
                    &format!("conjugation covariant block ({name})"),
                    &conj.covariant_block(s),
                );
                print_mat2(&format!("conjugation star block ({name})"), &conj.star_block(s));
            }
        }
        "virtual" => {
            for (s, name) in sector_names() {
                let v = make_virtual(s);
                print_mat2(&format!("virtual-particle covariant block ({name})"), v.covariant_block());
                print_mat2(&format!("virtual-particle intrinsic block ({name})"), &v.intrinsic());
            }
        }
        "measurement" => {
            for (s, name) in sector_names() {
                for (outcome, p) in measurement_pair(s).iter().enumerate() {
                    print_mat2(
                        &format!("measurement operator covariant ({name}, outcome {outcome})"),
                        &p.covariant(),
                    );
                    print_mat2(
                        &format!("measurement operator intrinsic ({name}, outcome {outcome})"),
                        &p.intrinsic(),
                    );
                }
            }
        }
        "mixed" => {
            for (s, name) in sector_names() {
                let d = maximally_mixed(s);
                print_mat2(&format!("maximally mixed intrinsic ({name})"), d.intrinsic());
                print_mat2(&format!("maximally mixed covariant ({name})"), &d.covariant());
            }
        }
        other => {
            return Err(format!(
                "{}: expected one of {}",
                module_err(Error::UnknownKind(other.to_string())),
                KINDS.join(", ")
            ))
        }
    }
    Ok(())
}

fn sector_names() -> [(Sector, &'static str); 2] {
    [(Sector::Plus, "particle"), (Sector::Minus, "antiparticle")]
}

fn print_observable(a: &Observable) {
    print_mat4(&format!("{} intrinsic entries", a.label()), &a.matrix4_intrinsic());
    print_mat4(&format!("{} covariant entries", a.label()), &a.matrix4_covariant());
}

fn print_mat2(title: &str, m: &CMat2) {
    let rows = (0..2)
        .map(|r| (0..2).map(|col| fmt_c(m.get(r, col))).collect())
        .collect();
    print_grid(title, rows);
}

fn print_mat4(title: &str, m: &CMat4) {
    let rows = (0..4)
        .map(|r| (0..4).map(|col| fmt_c(m.get(r, col))).collect())
        .collect();
    print_grid(title, rows);
}

fn print_grid(title: &str, rows: Vec<Vec<String>>) {
    println!("{title}:");
    let width = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        println!("  [ {} ]", cells.join("  "));
    }
}

fn fmt_f(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let shortest = format!("{x}");
    if shortest.len() <= 14 {
        shortest
    } else {
        format!("{x:.12}")
    }
}

fn fmt_c(z: C64) -> String {
    if z.im == 0.0 {
        fmt_f(z.re)
    } else if z.re == 0.0 {
        format!("{}i", fmt_f(z.im))
    } else if z.im < 0.0 {
        format!("{}{}i", fmt_f(z.re), fmt_f(z.im))
    } else {
        format!("{}+{}i", fmt_f(z.re), fmt_f(z.im))
    }
}
