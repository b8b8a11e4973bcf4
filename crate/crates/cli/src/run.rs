//! Executes a [`Scenario`] and gathers its table and channel transcript.

use std::fmt::Write as _;

use rayon::prelude::*;

use entangle::commsim::{compare_distances, DistanceModel, Ledger, TRANSCRIPT_HEADER};
use entangle::copies::WeightSectorState;
use entangle::protocols::{
    concentrate, dilute, extract_bell_pairs, reversibility_cycle, superdense_send, teleport,
};
use entangle::qstate::{
    entropy_of_entanglement, make_partial, reduced_density, von_neumann_entropy, QubitState, Side,
};
use entangle::{seeded_rng, SeededRng};

use crate::output::{Cell, Table};
use crate::scenario::{Command, Protocol, Scenario, SweepTarget};
use crate::CliError;

pub const ENTROPY_COLUMNS: &[&str] = &["command", "seed", "a2", "a", "entropy", "entropy_density"];

pub const CONCENTRATE_COLUMNS: &[&str] = &[
    "command",
    "seed",
    "point",
    "a2",
    "n",
    "trials",
    "entropy_per_copy",
    "expected_yield",
    "expected_yield_per_copy",
    "mean_yield_per_copy",
    "stderr_yield_per_copy",
    "mean_whole_pairs",
    "classical_bits",
    "rounds",
];

pub const DILUTE_COLUMNS: &[&str] = &[
    "command",
    "seed",
    "point",
    "a2",
    "n",
    "rate",
    "budget",
    "d",
    "entropy_per_copy",
    "budget_per_copy",
    "fidelity",
    "ebits_out",
    "classical_bits",
    "rounds",
    "elapsed_seconds",
];

pub const CYCLE_COLUMNS: &[&str] = &[
    "command",
    "seed",
    "point",
    "a2",
    "n",
    "d",
    "entropy_per_copy",
    "weight",
    "concentrated_ebits",
    "expected_yield",
    "bell_pairs",
    "residual_ebits",
    "diluted_copies",
    "fidelity",
    "per_copy_shortfall",
    "expected_per_copy_shortfall",
    "concentration_bits",
    "dilution_bits",
    "elapsed_seconds",
];

pub const TELEPORT_COLUMNS: &[&str] = &[
    "command",
    "seed",
    "trials",
    "d",
    "min_fidelity",
    "mean_fidelity",
    "branch_00",
    "branch_01",
    "branch_10",
    "branch_11",
    "classical_bits",
    "rounds",
    "elapsed_seconds",
];

pub const DENSE_COLUMNS: &[&str] = &[
    "command",
    "seed",
    "message",
    "decoded",
    "correct",
    "classical_bits",
    "qubits",
];

pub const COMPARE_COLUMNS: &[&str] = &[
    "command",
    "protocol",
    "seed",
    "a2",
    "n",
    "budget",
    "rate",
    "trials",
    "d",
    "rounds",
    "classical_bits",
    "qubits",
    "elapsed_seconds",
    "ratio",
    "distance_independent",
];

/// Output of one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    /// Channel events in the transcript line format. Sweep points follow one
    /// another with rounds offset, so the whole file parses as one ledger.
    pub transcript: String,
}

/// Table rows and ledger of a single parameter point.
struct PointRun {
    table: Table,
    ledger: Ledger,
}

/// Independent stream `point` of the master seed.
pub fn point_rng(seed: u64, point: usize) -> SeededRng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(point as u64);
    rng
}

pub fn run(s: &Scenario) -> Result<Report, CliError> {
    let points = match s.command {
        Command::Entropy => vec![entropy_run(s)?],
        Command::Concentrate => {
            vec![concentrate_point(s, "concentrate", 0, s.single_n()?)?]
        }
        Command::Dilute => {
            let budget = match s.budget.as_slice() {
                [] => None,
                [m] => Some(*m),
                _ => {
                    return Err(CliError::Usage(
                        "give one --budget value, or use `sweep`".into(),
                    ))
                }
            };
            vec![dilute_point(s, "dilute", 0, s.single_n()?, budget)?]
        }
        Command::Cycle => vec![cycle_point(s, "cycle", 0, s.single_n()?)?],
        Command::Teleport => vec![teleport_run(s)?],
        Command::Dense => vec![dense_run(s)?],
        Command::Sweep { target } => sweep(s, target)?,
        Command::CompareDistance { protocol } => vec![compare_run(s, protocol)?],
    };
    Ok(merge(points))
}

fn merge(points: Vec<PointRun>) -> Report {
    let mut transcript = format!("{TRANSCRIPT_HEADER}\n");
    let mut offset = 0;
    let many = points.len() > 1;
    let mut iter = points.into_iter().enumerate();
    let (_, first) = iter.next().expect("at least one point");
    let mut table = first.table;
    let mut append = |idx: usize, ledger: &Ledger| {
        if many {
            writeln!(transcript, "# point {idx}").unwrap();
        }
        for event in ledger.events() {
            let mut shifted = *event;
            shifted.round += offset;
            writeln!(transcript, "{shifted}").unwrap();
        }
        offset += ledger.next_round();
    };
    append(0, &first.ledger);
    for (idx, p) in iter {
        append(idx, &p.ledger);
        table.extend(p.table);
    }
    Report { table, transcript }
}

fn sweep(s: &Scenario, target: SweepTarget) -> Result<Vec<PointRun>, CliError> {
    let label = match target {
        SweepTarget::Concentrate => "sweep concentrate",
        SweepTarget::Dilute => "sweep dilute",
        SweepTarget::Cycle => "sweep cycle",
    };
    let ns = s.require_n()?;
    let grid: Vec<(u64, Option<u64>)> = match (target, s.budget.is_empty()) {
        (SweepTarget::Dilute, false) => ns
            .iter()
            .flat_map(|&n| s.budget.iter().map(move |&m| (n, Some(m))))
            .collect(),
        _ => ns.iter().map(|&n| (n, None)).collect(),
    };
    grid.into_par_iter()
        .enumerate()
        .map(|(point, (n, budget))| match target {
            SweepTarget::Concentrate => concentrate_point(s, label, point, n),
            SweepTarget::Dilute => dilute_point(s, label, point, n, budget),
            SweepTarget::Cycle => cycle_point(s, label, point, n),
        })
        .collect()
}

fn entropy_run(s: &Scenario) -> Result<PointRun, CliError> {
    let a2 = s.require_a2()?;
    let a = a2.sqrt();
    let state = make_partial(a)?;
    let entropy = entropy_of_entanglement(&state);
    let density = von_neumann_entropy(&reduced_density(&state.to_amplitude_matrix(), Side::A))?;
    if (entropy - density).abs() > 1e-10 {
        return Err(CliError::Invariant(format!(
            "Schmidt entropy {entropy} disagrees with reduced-density entropy {density}"
        )));
    }
    let mut table = Table::new(ENTROPY_COLUMNS);
    table.push(vec![
        "entropy".into(),
        s.seed.into(),
        a2.into(),
        a.into(),
        entropy.into(),
        density.into(),
    ]);
    Ok(PointRun {
        table,
        ledger: Ledger::new(),
    })
}

fn concentrate_point(
    s: &Scenario,
    label: &str,
    point: usize,
    n: u64,
) -> Result<PointRun, CliError> {
    let a2 = s.require_a2()?;
    let ws = WeightSectorState::from_a2(a2, n)?;
    let mut rng = point_rng(s.seed, point);
    let mut ledger = Ledger::new();
    let (mut sum, mut sum_sq, mut pairs) = (0.0, 0.0, 0u64);
    for _ in 0..s.trials {
        let c = concentrate(&ws, &mut rng, &mut ledger)?;
        let y = c.outcome.ebits_out / n as f64;
        sum += y;
        sum_sq += y * y;
        pairs += extract_bell_pairs(&c.state).whole_pairs;
    }
    if ledger.total_bits() != 0 {
        return Err(CliError::Invariant(format!(
            "concentration logged {} classical bits",
            ledger.total_bits()
        )));
    }
    let t = s.trials as f64;
    let mean = sum / t;
    let stderr = if s.trials > 1 {
        ((sum_sq - t * mean * mean).max(0.0) / (t - 1.0) / t).sqrt()
    } else {
        0.0
    };
    let expected = ws.expected_concentration_yield();
    let mut table = Table::new(CONCENTRATE_COLUMNS);
    table.push(vec![
        label.into(),
        s.seed.into(),
        point.into(),
        a2.into(),
        n.into(),
        s.trials.into(),
        ws.single_copy_entropy().into(),
        expected.into(),
        (expected / n as f64).into(),
        mean.into(),
        stderr.into(),
        (pairs as f64 / t).into(),
        ledger.total_bits().into(),
        ledger.total_rounds().into(),
    ]);
    Ok(PointRun { table, ledger })
}

fn dilute_point(
    s: &Scenario,
    label: &str,
    point: usize,
    n: u64,
    budget: Option<u64>,
) -> Result<PointRun, CliError> {
    let a2 = s.require_a2()?;
    let ws = WeightSectorState::from_a2(a2, n)?;
    let entropy = ws.single_copy_entropy();
    let m = match (budget, s.rate) {
        (Some(m), _) => m,
        (None, Some(rate)) => (rate * n as f64 * entropy).ceil() as u64,
        (None, None) => return Err(CliError::Usage("dilution needs --budget or --rate".into())),
    };
    let timing = DistanceModel::fiber(s.distance())?;
    let mut ledger = Ledger::new();
    let d = dilute(&ws, m, &mut ledger, &timing)?;
    if ledger.total_bits() != 2 * m {
        return Err(CliError::Invariant(format!(
            "dilution with {m} pairs logged {} bits",
            ledger.total_bits()
        )));
    }
    let mut table = Table::new(DILUTE_COLUMNS);
    table.push(vec![
        label.into(),
        s.seed.into(),
        point.into(),
        a2.into(),
        n.into(),
        s.rate.into(),
        m.into(),
        s.distance().into(),
        entropy.into(),
        (m as f64 / n as f64).into(),
        d.outcome.fidelity.into(),
        d.outcome.ebits_out.into(),
        ledger.total_bits().into(),
        ledger.total_rounds().into(),
        d.elapsed_seconds.into(),
    ]);
    Ok(PointRun { table, ledger })
}

fn cycle_point(s: &Scenario, label: &str, point: usize, n: u64) -> Result<PointRun, CliError> {
    let a2 = s.require_a2()?;
    let ws = WeightSectorState::from_a2(a2, n)?;
    let timing = DistanceModel::fiber(s.distance())?;
    let mut ledger = Ledger::new();
    let r = reversibility_cycle(&ws, &mut point_rng(s.seed, point), &mut ledger, &timing)?;
    let mut table = Table::new(CYCLE_COLUMNS);
    table.push(vec![
        label.into(),
        s.seed.into(),
        point.into(),
        a2.into(),
        n.into(),
        s.distance().into(),
        r.entropy_per_copy.into(),
        r.concentration.weight.into(),
        r.concentration.outcome.ebits_out.into(),
        r.expected_yield.into(),
        r.bell_pairs.into(),
        r.residual_ebits.into(),
        r.diluted_copies.into(),
        r.end_to_end_fidelity().into(),
        r.per_copy_shortfall().into(),
        r.expected_per_copy_shortfall().into(),
        r.concentration_bits.into(),
        r.dilution_bits.into(),
        r.dilution
            .as_ref()
            .map_or(0.0, |d| d.elapsed_seconds)
            .into(),
    ]);
    Ok(PointRun { table, ledger })
}

fn teleport_run(s: &Scenario) -> Result<PointRun, CliError> {
    let mut rng = point_rng(s.seed, 0);
    let mut ledger = Ledger::new();
    let mut branches = [0u64; 4];
    let (mut min_f, mut sum_f) = (f64::INFINITY, 0.0);
    for _ in 0..s.trials {
        let input = QubitState::random(&mut rng);
        let t = teleport(&input, &mut rng, &mut ledger)?;
        branches[usize::from(t.branch.0) << 1 | usize::from(t.branch.1)] += 1;
        min_f = min_f.min(t.outcome.fidelity);
        sum_f += t.outcome.fidelity;
    }
    if min_f < 1.0 - 1e-9 {
        return Err(CliError::Invariant(format!(
            "teleportation fidelity fell to {min_f}"
        )));
    }
    let timing = DistanceModel::fiber(s.distance())?;
    let mut table = Table::new(TELEPORT_COLUMNS);
    table.push(vec![
        "teleport".into(),
        s.seed.into(),
        s.trials.into(),
        s.distance().into(),
        min_f.into(),
        (sum_f / s.trials as f64).into(),
        branches[0].into(),
        branches[1].into(),
        branches[2].into(),
        branches[3].into(),
        ledger.total_bits().into(),
        ledger.total_rounds().into(),
        timing.elapsed_time(&ledger).into(),
    ]);
    Ok(PointRun { table, ledger })
}

fn bits(message: [bool; 2]) -> String {
    message.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn dense_run(s: &Scenario) -> Result<PointRun, CliError> {
    let mut ledger = Ledger::new();
    let mut table = Table::new(DENSE_COLUMNS);
    for message in [[false, false], [false, true], [true, false], [true, true]] {
        let before = (ledger.total_bits(), ledger.total_qubits());
        let got = superdense_send(message, &mut ledger)?;
        if got.decoded != message {
            return Err(CliError::Invariant(format!(
                "sent {} but decoded {}",
                bits(message),
                bits(got.decoded)
            )));
        }
        table.push(vec![
            "dense".into(),
            s.seed.into(),
            bits(message).into(),
            bits(got.decoded).into(),
            true.into(),
            (ledger.total_bits() - before.0).into(),
            (ledger.total_qubits() - before.1).into(),
        ]);
    }
    Ok(PointRun { table, ledger })
}

fn compare_run(s: &Scenario, protocol: Protocol) -> Result<PointRun, CliError> {
    let name = protocol.name();
    let base = match protocol {
        Protocol::Concentrate => concentrate_point(s, name, 0, s.single_n()?)?,
        Protocol::Dilute => {
            let budget = match s.budget.as_slice() {
                [] => None,
                [m] => Some(*m),
                _ => return Err(CliError::Usage("give one --budget value".into())),
            };
            dilute_point(s, name, 0, s.single_n()?, budget)?
        }
        Protocol::Cycle => cycle_point(s, name, 0, s.single_n()?)?,
        Protocol::Teleport => teleport_run(s)?,
        Protocol::Dense => dense_run(s)?,
    };
    let budget = match base.table.get(0, "budget") {
        Some(Cell::Int(m)) => Some(*m),
        _ => None,
    };
    let ledger = base.ledger;
    let distances = s.distances();
    let model = DistanceModel::fiber(distances[0])?;
    let mut table = Table::new(COMPARE_COLUMNS);
    for &d in &distances {
        let c = compare_distances(&ledger, &model, distances[0], d)?;
        table.push(vec![
            "compare-distance".into(),
            name.into(),
            s.seed.into(),
            s.a2.into(),
            s.n.first().copied().into(),
            budget.into(),
            s.rate.into(),
            s.trials.into(),
            d.into(),
            ledger.total_rounds().into(),
            ledger.total_bits().into(),
            ledger.total_qubits().into(),
            c.time_d2.into(),
            c.ratio.into(),
            c.distance_independent.into(),
        ]);
    }
    Ok(PointRun { table, ledger })
}
