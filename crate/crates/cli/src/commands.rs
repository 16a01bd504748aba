use serde_json::{json, Value};

use uvqc::arealaw::{self, GeometrySpec};
use uvqc::circuit::Circuit;
use uvqc::clock::ClockSystem;
use uvqc::pauli::PauliSum;
use uvqc::telescope::TelescopeObjective;
use uvqc::variational::{minimize_with, witness_check, AnsatzSpec, OptimizerConfig, Witness};
use uvqc::Error;

use crate::args::*;
use crate::report::*;

type Outcome = Result<u8, Failure>;

fn load_circuit(run: &mut Run, path: &std::path::Path) -> Result<Circuit, Failure> {
    let text = run.read(path)?;
    Circuit::parse(&text).map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

fn load_sum(run: &mut Run, path: &std::path::Path) -> Result<PauliSum, Failure> {
    let text = run.read(path)?;
    PauliSum::parse(&text).map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

/// Circuit files name only the qubits they touch.
fn widen(c: Circuit, n: usize) -> Result<Circuit, Failure> {
    if c.n() >= n {
        return Ok(c);
    }
    Ok(Circuit::from_gates(n, c.gates().iter().cloned())?)
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Telescope(a) => telescope(a),
        Command::Clock(a) => clock(a),
        Command::Optimize(a) => optimize(a),
        Command::Arealaw(a) => area_law(a),
        Command::Verify(a) => verify(a),
    }
}

fn telescope(a: TelescopeArgs) -> Outcome {
    let mut run = Run::start(a.common.seed);
    let circuit = load_circuit(&mut run, &a.circuit)?;
    let map = match &a.product_map {
        Some(p) => Some(load_circuit(&mut run, p)?),
        None => None,
    };
    let n = circuit.n();
    let mut t = TelescopeObjective::new(circuit, map)?.with_cap(a.max_cardinality);
    let forecast = t.forecast();
    if !forecast.within {
        eprintln!(
            "warning: cardinality forecast {:.3e} exceeds cap {}",
            forecast.forecast, forecast.cap
        );
    }
    let certify = n <= a.common.dense_cap;
    let mut lines = Vec::new();
    let mut failed = 0usize;
    loop {
        let line = if certify {
            match t.certify_with_cap(a.common.max_dim()) {
                Ok(c) => {
                    if !c.passed() {
                        failed += 1;
                    }
                    json!({
                        "k": c.k,
                        "cardinality": c.cardinality,
                        "gap": c.gap,
                        "ground_overlap": c.ground_overlap,
                        "circuit_energy": c.circuit_energy,
                        "passed": c.passed(),
                    })
                }
                Err(Error::Certification(msg)) => {
                    failed += 1;
                    eprintln!("prefix {}: {msg}", t.k());
                    json!({"k": t.k(), "cardinality": t.cardinality(), "gap": null,
                           "ground_overlap": null, "circuit_energy": null, "passed": false})
                }
                Err(e) => return Err(e.into()),
            }
        } else {
            json!({"k": t.k(), "cardinality": t.cardinality(), "gap": null,
                   "ground_overlap": null, "circuit_energy": null})
        };
        lines.push(line);
        if t.is_complete() {
            break;
        }
        if let Err(e) = t.extend() {
            if let Error::BudgetExceeded { forecast, cap } = e {
                return Err(Failure::new(
                    CAP,
                    format!(
                        "cardinality budget exceeded at gate {}: forecast {forecast:.3e}, cap {cap}",
                        t.k()
                    ),
                ));
            }
            return Err(e.into());
        }
    }

    if let Some(out) = &a.common.out {
        write_file(out, &t.h().to_text())?;
    }
    let summary = run.finish(json!({
        "n": n,
        "gates": t.k(),
        "cardinality": t.cardinality(),
        "forecast": forecast.forecast,
        "certified": certify,
        "failed_prefixes": failed,
    }));
    let mut text = String::new();
    for l in lines.iter().chain(std::iter::once(&summary)) {
        text.push_str(&l.to_string());
        text.push('\n');
    }
    emit(a.common.report.as_deref(), &text)?;
    eprintln!(
        "telescope: {} gates, cardinality {}, {}",
        t.k(),
        t.cardinality(),
        if !certify {
            "not certified (above dense cap)".to_string()
        } else if failed == 0 {
            "all prefixes certified".to_string()
        } else {
            format!("{failed} prefixes failed certification")
        }
    );
    Ok(if failed == 0 { OK } else { CERTIFICATION })
}

fn clock(a: ClockArgs) -> Outcome {
    let mut run = Run::start(a.common.seed);
    let circuit = load_circuit(&mut run, &a.circuit)?;
    let map = match &a.input_map {
        Some(p) => Some(load_circuit(&mut run, p)?),
        None => None,
    };
    let sys = ClockSystem::new(circuit, map, a.j, a.k, a.pad)?;
    let h = sys.build_objective()?;
    if let Some(out) = &a.common.out {
        write_file(out, &h.to_text())?;
    }
    if sys.total_qubits() > a.common.dense_cap {
        return Err(Failure::new(
            CAP,
            format!(
                "clock objective has {} qubits, above the dense cap of {}",
                sys.total_qubits(),
                a.common.dense_cap
            ),
        ));
    }
    let c = sys.certify_with_cap(a.common.max_dim())?;
    let report = run.finish(json!({
        "n": sys.n(),
        "J": a.j,
        "K": a.k,
        "pad": a.pad,
        "L": c.l,
        "clock_qubits": c.clock_qubits,
        "cardinality": c.cardinality,
        "ground_energy": c.ground_energy,
        "gap": c.gap,
        "gap_bound": c.gap_bound,
        "bound_holds": c.bound_holds,
        "degenerate": c.degenerate,
        "ground_overlap_with_history": c.ground_overlap_with_history,
        "history_energy": c.history_energy,
        "eq18_predicted": c.eq18_predicted,
        "eq18_measured": c.eq18_measured,
        "passed": c.passed(),
    }));
    emit(a.common.report.as_deref(), &pretty(&report))?;
    eprintln!(
        "clock: L = {}, {} clock qubits, {} terms, gap {:.6}, history overlap {:.12}",
        c.l, c.clock_qubits, c.cardinality, c.gap, c.ground_overlap_with_history
    );
    if !c.bound_holds {
        eprintln!(
            "note: gap {:.6} is below the stated lower bound {:.6}",
            c.gap, c.gap_bound
        );
    }
    Ok(if c.passed() { OK } else { CERTIFICATION })
}

fn ansatz(
    run: &mut Run,
    kind: AnsatzKind,
    template: Option<&std::path::Path>,
    n: usize,
    depth: usize,
    geometry: uvqc::variational::Geometry,
) -> Result<AnsatzSpec, Failure> {
    Ok(match kind {
        AnsatzKind::HardwareEfficient => AnsatzSpec::hardware_efficient(n, depth, geometry),
        AnsatzKind::BrickLayer => AnsatzSpec::brick_layer(n, depth, geometry),
        AnsatzKind::CircuitShaped => {
            let path =
                template.ok_or_else(|| Failure::new(USAGE, "circuit_shaped needs --template"))?;
            AnsatzSpec::circuit_shaped(widen(load_circuit(run, path)?, n)?)
        }
    })
}

fn optimize(a: OptimizeArgs) -> Outcome {
    let mut run = Run::start(a.common.seed);
    let h = load_sum(&mut run, &a.objective)?;
    let spec = ansatz(
        &mut run,
        a.ansatz,
        a.template.as_deref(),
        h.n(),
        a.depth,
        a.geometry,
    )?;
    let mut config = OptimizerConfig {
        budget: a.budget,
        shots: a.shots,
        ..OptimizerConfig::default()
    };
    if let Some(r) = a.restarts {
        config.restarts = r;
    }
    let best = minimize_with(&h, &spec, a.delta, a.common.seed, &config)?;
    let witness = spec.circuit(&best.best_params)?;
    if let Some(out) = &a.common.out {
        write_file(out, &witness.to_text())?;
    }
    let check = if h.n() <= a.common.dense_cap {
        let w = witness_check(&h, &Witness::Circuit(witness), a.delta, a.common.max_dim())?;
        json!({
            "gap": w.gap,
            "trace": w.trace,
            "bounds": w.bounds.map(|(lo, hi)| json!([lo, hi])),
        })
    } else {
        Value::Null
    };
    let report = run.finish(json!({
        "n": h.n(),
        "ansatz": spec.family.name(),
        "geometry": spec.geometry.name(),
        "depth": spec.depth,
        "parameters": best.best_params.len(),
        "delta": a.delta,
        "budget": config.budget,
        "restarts": config.restarts,
        "shots": config.shots,
        "energy": best.best_value,
        "accepted": best.accepted,
        "evaluations": best.evaluations,
        "restart": best.restart,
        "best_params": best.best_params,
        "trace": best.trace,
        "certificate": check,
    }));
    emit(a.common.report.as_deref(), &pretty(&report))?;
    eprintln!(
        "optimize: energy {:.6e} after {} evaluations, {}",
        best.best_value,
        best.evaluations,
        if best.accepted {
            "accepted"
        } else {
            "not accepted"
        }
    );
    Ok(if best.accepted { OK } else { ACCEPTANCE })
}

fn area_law(a: ArealawArgs) -> Outcome {
    let mut run = Run::start(a.common.seed);
    let geometry = GeometrySpec::new(a.geometry, a.n)?;
    if a.ansatz == AnsatzKind::CircuitShaped {
        return Err(Failure::new(USAGE, "arealaw takes a layered ansatz family"));
    }
    let spec = ansatz(&mut run, a.ansatz, None, a.n, a.depth, a.geometry)?;
    let cuts = match a.cuts {
        CutSet::Contiguous => arealaw::contiguous_cuts(a.n),
        CutSet::Balanced => arealaw::balanced_cuts(a.n)?,
        CutSet::All => {
            let mut c = arealaw::contiguous_cuts(a.n);
            if a.n <= 8 {
                for m in arealaw::balanced_cuts(a.n)? {
                    if !c.contains(&m) {
                        c.push(m);
                    }
                }
            }
            c
        }
    };
    if cuts.is_empty() {
        return Err(Failure::new(USAGE, "need at least two qubits to cut"));
    }
    let r = arealaw::sweep(&spec, &cuts, a.draws, a.common.seed)?;
    let per_cut: Vec<Value> = r
        .cuts
        .iter()
        .map(|c| {
            json!({
                "cut": format!("{:0width$b}", c.cut, width = a.n),
                "max_rank_ebits": c.max_rank_ebits,
                "max_entropy_ebits": c.max_entropy_ebits,
                "mean_entropy_ebits": c.mean_entropy_ebits,
            })
        })
        .collect();
    let histogram: Vec<Value> = r
        .histogram
        .bins()
        .into_iter()
        .map(|(lo, count)| json!({"from": lo, "count": count}))
        .collect();
    let report = run.finish(json!({
        "geometry": a.geometry.name(),
        "ansatz": spec.family.name(),
        "n": a.n,
        "depth": a.depth,
        "two_qubit_gates": r.two_qubit_gates,
        "draws": r.draws,
        "bound": r.bound,
        "saturating_depth": finite(geometry.saturating_depth()?),
        "max_rank_ebits": r.max_rank_ebits,
        "max_entropy_ebits": r.max_entropy_ebits,
        "violations": r.violations,
        "cuts": per_cut,
        "entropy_histogram": {
            "bin_width": r.histogram.bin_width(),
            "bins": histogram,
        },
    }));
    emit(a.common.report.as_deref(), &pretty(&report))?;
    eprintln!(
        "arealaw: bound {}, max rank ebits {:.3}, max entropy {:.3}, {} violations in {} draws",
        r.bound, r.max_rank_ebits, r.max_entropy_ebits, r.violations, r.draws
    );
    Ok(if r.within_bound() { OK } else { CERTIFICATION })
}

fn verify(a: VerifyArgs) -> Outcome {
    let mut run = Run::start(a.common.seed);
    let h = load_sum(&mut run, &a.objective)?;
    let witness = widen(load_circuit(&mut run, &a.witness)?, h.n())?;
    if h.n() > a.common.dense_cap {
        return Err(Failure::new(
            CAP,
            format!(
                "objective has {} qubits, above the dense cap of {}",
                h.n(),
                a.common.dense_cap
            ),
        ));
    }
    let w = witness_check(&h, &Witness::Circuit(witness), a.delta, a.common.max_dim())?;
    let report = run.finish(json!({
        "n": h.n(),
        "cardinality": h.cardinality(),
        "delta": a.delta,
        "energy": w.energy,
        "accepted": w.accepted,
        "gap": w.gap,
        "trace": w.trace,
        "bounds": w.bounds.map(|(lo, hi)| json!([lo, hi])),
    }));
    emit(a.common.report.as_deref(), &pretty(&report))?;
    eprintln!(
        "verify: energy {:.6e} against delta {}, {}",
        w.energy,
        a.delta,
        if w.accepted { "accepted" } else { "rejected" }
    );
    Ok(if w.accepted { OK } else { ACCEPTANCE })
}
