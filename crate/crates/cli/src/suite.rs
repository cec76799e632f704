//! Randomized battery over every pass, one report line per trial.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use gatewire::bounds::{self, BoundParams};
use gatewire::circuit::{collapse, equivalent, find_counterexample, gen, weakly_computes, Circuit};
use gatewire::compress::{encode, Decoder, OperatorEncoding};
use gatewire::rng::{trial_rng, WorkbenchRng};
use gatewire::transforms::{cap_fanin, linearize};
use gatewire::{Gf2Matrix, Gf2Vector, LinearDepth2Circuit};
use rand::Rng;
use rayon::prelude::*;

const CAP: usize = 12;

pub struct SuiteConfig {
    pub trials: u64,
    pub n_max: usize,
    pub seed: u64,
    pub witness_dir: PathBuf,
}

/// A failed check together with what is needed to replay it.
struct Failure {
    check: &'static str,
    message: String,
    circuit: Option<String>,
    x: Option<Gf2Vector>,
}

impl Failure {
    fn new(check: &'static str, message: impl Into<String>) -> Self {
        Self {
            check,
            message: message.into(),
            circuit: None,
            x: None,
        }
    }

    fn with_circuit(mut self, text: String) -> Self {
        self.circuit = Some(text);
        self
    }

    fn at(mut self, x: Gf2Vector) -> Self {
        self.x = Some(x);
        self
    }
}

type Check = std::result::Result<(), Failure>;

fn fail_on<E: std::fmt::Display>(check: &'static str) -> impl Fn(E) -> Failure {
    move |e| Failure::new(check, e.to_string())
}

fn check_linearize(n: usize, r: usize, rng: &mut WorkbenchRng) -> Check {
    const NAME: &str = "linearize";
    let density = rng.gen_range(0.2..0.8);
    let c = gen::cancelling_middle_instance(n, r, density, rng).map_err(fail_on(NAME))?;
    let text = c.to_text();
    let (lin, report) =
        linearize(&c, CAP).map_err(|e| fail_on(NAME)(e).with_circuit(text.clone()))?;
    if let Some(x) = find_counterexample(&c, &lin, CAP).map_err(fail_on(NAME))? {
        return Err(Failure::new(NAME, "linearized circuit differs")
            .with_circuit(text)
            .at(x));
    }
    if !report.ok() {
        let kv = report.to_kv().replace('\n', " ");
        return Err(Failure::new(NAME, format!("budget violated: {kv}")).with_circuit(text));
    }
    Ok(())
}

fn check_codec(n: usize, r: usize, rng: &mut WorkbenchRng) -> Check {
    const NAME: &str = "codec";
    let density = rng.gen_range(0.2..0.8);
    let inst = gen::planted_parity_instance(n, r, density, rng).map_err(fail_on(NAME))?;
    let c = &inst.circuit;
    let text = c.to_text();
    let with_text = |e: String| Failure::new(NAME, e).with_circuit(text.clone());
    let enc = encode(c, CAP).map_err(|e| with_text(e.to_string()))?;
    let bytes = enc.serialize();
    let back = OperatorEncoding::deserialize(&bytes).map_err(|e| with_text(e.to_string()))?;
    if back != enc {
        return Err(with_text(
            "serialization roundtrip changed the encoding".into(),
        ));
    }
    let w = usize::BITS as usize - n.max(r).leading_zeros() as usize;
    let bound = 96 + 16 * n + 2 * c.wires() * w + enc.basis_bit_count();
    if bytes.len() * 8 > bound {
        return Err(with_text(format!(
            "{} bits exceed bound {bound}",
            bytes.len() * 8
        )));
    }
    let decoder = Decoder::new(&back);
    let table = collapse(c, CAP).map_err(fail_on(NAME))?;
    for (index, want) in table.values().iter().enumerate() {
        let x = Gf2Vector::from_index(n, index as u64);
        match decoder.decode(&x) {
            Ok(y) if &y == want => {}
            Ok(_) => return Err(with_text("decoded value differs".into()).at(x)),
            Err(e) => return Err(with_text(e.to_string()).at(x)),
        }
    }
    let columns: Vec<Gf2Vector> = (0..n).map(|j| table.get(1 << j).clone()).collect();
    if Gf2Matrix::from_columns(n, &columns).map_err(fail_on(NAME))? != inst.matrix {
        return Err(with_text("planted matrix not recovered".into()));
    }
    Ok(())
}

fn check_cap_fanin(n: usize, rng: &mut WorkbenchRng) -> Check {
    const NAME: &str = "cap_fanin";
    let gates = rng.gen_range(3..=12);
    let over = rng.gen_range(1..=3.min(gates - 1));
    let c = gen::random_general(n, gates, over, rng).map_err(fail_on(NAME))?;
    let text = c.to_text();
    let with_text = |e: String| Failure::new(NAME, e).with_circuit(text.clone());
    let capped = cap_fanin(&c, CAP).map_err(|e| with_text(e.to_string()))?;
    if let Some(x) = find_counterexample(&c, &capped, CAP).map_err(fail_on(NAME))? {
        return Err(with_text("capped circuit differs".into()).at(x));
    }
    if capped.max_fanin() > n {
        return Err(with_text(format!("fanin {} above n", capped.max_fanin())));
    }
    if capped.wires() > c.wires() {
        return Err(with_text(format!(
            "wires {} -> {}",
            c.wires(),
            capped.wires()
        )));
    }
    if cap_fanin(&capped, CAP).map_err(fail_on(NAME))? != capped {
        return Err(with_text("not idempotent".into()));
    }
    Ok(())
}

fn check_weak(n: usize, rng: &mut WorkbenchRng) -> Check {
    const NAME: &str = "weak";
    let r = rng.gen_range(1..=2 * n);
    let lin = LinearDepth2Circuit::new(
        Gf2Matrix::random(r, n, rng),
        Gf2Matrix::random(n, r, rng),
        Gf2Vector::zeros(n),
    )
    .map_err(fail_on(NAME))?;
    let a = if rng.gen_bool(0.5) {
        lin.c().mul(lin.b()).map_err(fail_on(NAME))?
    } else {
        Gf2Matrix::random(n, n, rng)
    };
    let weak = weakly_computes(&lin, &a).map_err(fail_on(NAME))?;
    let full =
        equivalent(&lin, &LinearDepth2Circuit::from_matrix(&a), CAP).map_err(fail_on(NAME))?;
    if weak != full {
        return Err(Failure::new(NAME, format!("weak={weak} full={full}"))
            .with_circuit(lin.to_depth2().to_text()));
    }
    Ok(())
}

fn check_gf2(rng: &mut WorkbenchRng) -> Check {
    const NAME: &str = "gf2";
    let (rows, cols) = (rng.gen_range(0..=12), rng.gen_range(0..=12));
    let m = Gf2Matrix::random(rows, cols, rng);
    let basis = m.first_basis_columns();
    if basis.len() != m.rank() || m.transpose().rank() != m.rank() {
        return Err(Failure::new(
            NAME,
            format!("rank mismatch on\n{}", m.to_text()),
        ));
    }
    let vectors: Vec<Gf2Vector> = basis.iter().map(|&j| m.column(j)).collect();
    for j in 0..cols {
        let lambda = gatewire::gf2::solve_in_span(&vectors, &m.column(j)).map_err(fail_on(NAME))?;
        let mut back = Gf2Vector::zeros(rows);
        for k in lambda.ones() {
            back.xor_assign(&vectors[k]);
        }
        if back != m.column(j) {
            return Err(Failure::new(NAME, format!("column {j} not reproduced")));
        }
    }
    Ok(())
}

fn run_trial(config: &SuiteConfig, t: u64) -> (String, Vec<Failure>) {
    let mut rng = trial_rng(config.seed, t);
    let span = config.n_max - 2;
    let n = 3 + (t as usize) % span;
    let r = 1 + (t as usize / span) % 12;
    let checks = [
        check_linearize(n, r, &mut rng),
        check_codec(n, r, &mut rng),
        check_cap_fanin(n, &mut rng),
        check_weak(n, &mut rng),
        check_gf2(&mut rng),
    ];
    let mut line = format!("trial={t} n={n} r={r}");
    let mut failures = Vec::new();
    for (name, outcome) in ["linearize", "codec", "cap_fanin", "weak", "gf2"]
        .iter()
        .zip(checks)
    {
        match outcome {
            Ok(()) => line.push_str(&format!(" {name}=ok")),
            Err(f) => {
                line.push_str(&format!(" {name}=FAIL"));
                failures.push(f);
            }
        }
    }
    (line, failures)
}

fn bounds_line() -> Result<(String, bool)> {
    let mut stars = Vec::new();
    let mut ok = true;
    let mut n = 8;
    while n <= 128 {
        let l = bounds::min_wires_lower_bound(&BoundParams::new(n)?)?;
        ok &= l < n * n && stars.last().is_none_or(|&prev| l >= 2 * prev);
        stars.push(l);
        n *= 2;
    }
    let lstar: Vec<String> = stars.iter().map(u64::to_string).collect();
    let verdict = if ok { "ok" } else { "FAIL" };
    Ok((format!("bounds={verdict} L_star={}", lstar.join(",")), ok))
}

/// Runs the battery, writing report lines in trial order. Returns whether
/// every check passed.
pub fn run(config: &SuiteConfig, out: &mut impl Write) -> Result<bool> {
    if config.trials == 0 {
        bail!("--trials must be at least 1");
    }
    if !(3..=CAP).contains(&config.n_max) {
        bail!("--n-max must lie in 3..={CAP}");
    }
    let results: Vec<(String, Vec<Failure>)> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect();
    let mut failed = 0;
    for (t, (line, failures)) in results.into_iter().enumerate() {
        writeln!(out, "{line}")?;
        for f in failures {
            failed += 1;
            write!(
                out,
                "  failure trial={t} check={} message={}",
                f.check, f.message
            )?;
            if let Some(text) = &f.circuit {
                fs::create_dir_all(&config.witness_dir)
                    .with_context(|| format!("creating {}", config.witness_dir.display()))?;
                let path = config
                    .witness_dir
                    .join(format!("trial-{t}-{}.txt", f.check));
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                write!(out, " witness={}", path.display())?;
            }
            if let Some(x) = &f.x {
                write!(out, " x={x}")?;
            }
            writeln!(out)?;
        }
    }
    let (line, bounds_ok) = bounds_line()?;
    writeln!(out, "{line}")?;
    let ok = failed == 0 && bounds_ok;
    writeln!(out, "trials={} failures={failed} ok={ok}", config.trials)?;
    Ok(ok)
}
