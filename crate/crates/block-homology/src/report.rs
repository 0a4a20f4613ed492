//! Report assembly and rendering.
//!
//! `run_report` evaluates every invariant of a datum into a plain
//! serializable document; `render_text` pretty-prints it for terminals and
//! `render_json` emits canonical JSON (fixed field order, sorted rows), so
//! identical inputs produce byte-identical output.

use num::BigRational;
use serde::Serialize;

use crate::error::Result;
use crate::input::RunOptions;
use crate::invariants::BlockDatum;
use crate::lattice::RationalVector;

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub label: String,
    pub rank: usize,
    pub group_order: usize,
    pub cocycle_modulus: u64,
    pub cocycle_trivial: bool,
    pub max_degree: usize,
    /// The same dimensions hold verbatim for the compactly supported
    /// variant of the function algebra; nothing downstream depends on the
    /// choice.
    pub applies_to_compact_variant: bool,
    pub loci: Vec<LocusRow>,
    pub orbits: Vec<OrbitRow>,
    pub hh: Vec<DegreeRow>,
    pub hc_tails: Vec<TailRow>,
    pub hp: PairRow,
    pub k_theory: PairRow,
    pub fibers: Vec<FiberRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocusRow {
    pub element: usize,
    pub nonempty: bool,
    pub dimension: usize,
    pub components: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitRow {
    pub id: usize,
    pub representative: [usize; 2],
    pub dimension: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub twist_trivial_on_stabilizer: bool,
    pub lambda_ranks: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    /// Generic module rank contributed by each orbit, in orbit order.
    pub orbit_ranks: Vec<usize>,
    pub total_rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TailRow {
    pub degree: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRow {
    pub even: usize,
    pub odd: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberRow {
    /// Coordinates as reduced `"p/q"` strings.
    pub point: Vec<String>,
    pub stabilizer_order: usize,
    pub extended_quotient_points: usize,
    /// Fiber dimensions for degrees `0..=max_degree`.
    pub hh_dims: Vec<usize>,
}

fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn point_strings(p: &RationalVector) -> Vec<String> {
    (0..p.dim()).map(|i| rational_string(p.get(i))).collect()
}

/// Evaluate all invariants of `datum` into a report document.
pub fn run_report(datum: &BlockDatum, options: &RunOptions) -> Result<ReportDocument> {
    let max_degree = options.max_degree.unwrap_or(datum.rank());

    let loci = datum
        .loci()
        .iter()
        .enumerate()
        .map(|(element, locus)| LocusRow {
            element,
            nonempty: locus.nonempty,
            dimension: locus.dimension,
            components: locus.component_count(),
        })
        .collect();

    let summary = datum.hh_module_summary();
    let orbits: Vec<OrbitRow> = summary
        .iter()
        .map(|row| OrbitRow {
            id: row.orbit,
            representative: [row.representative.0, row.representative.1],
            dimension: row.dimension,
            orbit_size: row.orbit_size,
            stabilizer_order: row.stabilizer_order,
            twist_trivial_on_stabilizer: row.twist_trivial_on_stabilizer,
            lambda_ranks: row.lambda_ranks.clone(),
        })
        .collect();

    let hh = (0..=max_degree)
        .map(|degree| {
            let orbit_ranks: Vec<usize> = summary.iter().map(|row| row.rank_at(degree)).collect();
            let total_rank = orbit_ranks.iter().sum();
            DegreeRow {
                degree,
                orbit_ranks,
                total_rank,
            }
        })
        .collect();

    let hc_tails = (0..=max_degree)
        .map(|degree| {
            Ok(TailRow {
                degree,
                dimension: datum.hc_tail_dims(degree)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let (hp_even, hp_odd) = datum.hp_dims()?;
    let (k_even, k_odd) = datum.k_theory_ranks()?;

    let mut fibers = Vec::new();
    for point in &options.fiber_points {
        let stabilizer_order =
            crate::group::stabilizer_of_point(datum.group(), point)?.len();
        let extended_quotient_points = datum.extended_quotient_point_count(point)?;
        let hh_dims = (0..=max_degree)
            .map(|n| datum.hh_fiber_dim(point, n))
            .collect::<Result<Vec<_>>>()?;
        fibers.push(FiberRow {
            point: point_strings(point),
            stabilizer_order,
            extended_quotient_points,
            hh_dims,
        });
    }

    Ok(ReportDocument {
        schema: crate::input::SCHEMA_VERSION,
        label: datum.label().to_string(),
        rank: datum.rank(),
        group_order: datum.group().order(),
        cocycle_modulus: datum.cocycle().modulus(),
        cocycle_trivial: datum.cocycle().is_trivial(),
        max_degree,
        applies_to_compact_variant: true,
        loci,
        orbits,
        hh,
        hc_tails,
        hp: PairRow {
            even: hp_even,
            odd: hp_odd,
        },
        k_theory: PairRow {
            even: k_even,
            odd: k_odd,
        },
        fibers,
    })
}

/// Canonical JSON rendering (pretty, fixed field order, newline-terminated).
pub fn render_json(report: &ReportDocument) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serialization is total");
    out.push('\n');
    out
}

/// Human-readable rendering.
pub fn render_text(report: &ReportDocument) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let twist = if report.cocycle_trivial {
        "trivial".to_string()
    } else {
        format!("mod-{} exponent table", report.cocycle_modulus)
    };
    let _ = writeln!(s, "block: {}", report.label);
    let _ = writeln!(
        s,
        "torus rank {} | group order {} | cocycle {}",
        report.rank, report.group_order, twist
    );
    let _ = writeln!(s);

    let _ = writeln!(s, "fixed loci (element: dim x components)");
    for row in &report.loci {
        if row.nonempty {
            let _ = writeln!(
                s,
                "  w{:<3} dim {}  components {}",
                row.element, row.dimension, row.components
            );
        } else {
            let _ = writeln!(s, "  w{:<3} empty", row.element);
        }
    }
    let _ = writeln!(s);

    let _ = writeln!(s, "component orbits");
    for o in &report.orbits {
        let _ = writeln!(
            s,
            "  #{:<2} rep (w{}, c{})  dim {}  orbit size {}  stabilizer {}  twist {}  ranks {:?}",
            o.id,
            o.representative[0],
            o.representative[1],
            o.dimension,
            o.orbit_size,
            o.stabilizer_order,
            if o.twist_trivial_on_stabilizer {
                "trivial"
            } else {
                "nontrivial"
            },
            o.lambda_ranks
        );
    }
    let _ = writeln!(s);

    let _ = writeln!(s, "module ranks by degree (per orbit | total)");
    for row in &report.hh {
        let _ = writeln!(
            s,
            "  HH_{:<2} {:?} | {}",
            row.degree, row.orbit_ranks, row.total_rank
        );
    }
    let _ = writeln!(s);

    let _ = writeln!(s, "cyclic tails (finite-dimensional part per degree)");
    for row in &report.hc_tails {
        let _ = writeln!(s, "  HC_{:<2} tail dim {}", row.degree, row.dimension);
    }
    let _ = writeln!(s);

    let _ = writeln!(
        s,
        "periodic pair: even {}  odd {}",
        report.hp.even, report.hp.odd
    );
    let _ = writeln!(
        s,
        "K-theory ranks: K0 {}  K1 {}",
        report.k_theory.even, report.k_theory.odd
    );

    if !report.fibers.is_empty() {
        let _ = writeln!(s);
        let _ = writeln!(s, "fibers at requested points");
        for f in &report.fibers {
            let _ = writeln!(
                s,
                "  ({})  stabilizer {}  quotient points {}  dims {:?}",
                f.point.join(", "),
                f.stabilizer_order,
                f.extended_quotient_points,
                f.hh_dims
            );
        }
    }
    s
}
