mod suite;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gatewire::bounds;
use gatewire::circuit::{
    find_counterexample, gen, parse_circuit, weakly_computes, AnyCircuit, Circuit, EXHAUSTIVE_CAP,
};
use gatewire::compress::{encode, Decoder};
use gatewire::rng::seeded;
use gatewire::transforms::{cap_fanin, linearize};
use gatewire::{Depth2Circuit, GeneralCircuit, Gf2Matrix, Gf2Vector, OperatorEncoding};

#[derive(Parser)]
#[command(
    name = "gatewire",
    version,
    about = "Seeded experiments on circuits with arbitrary gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Random depth-2 circuit with arbitrary gates.
    Random,
    /// Non-linear middle layer, linear outputs, linear operator.
    Cancelling,
    /// Parity middle layer, arbitrary outputs, planted linear operator.
    Planted,
    /// General DAG with gates of fanin above n.
    General,
}

#[derive(Subcommand)]
enum Command {
    /// Random n x n matrix in text format.
    GenMatrix {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random circuit from a generator family.
    GenCircuit {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Middle gates (depth-2 families) or gate count (general).
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Gates of fanin above n (general family).
        #[arg(long, default_value_t = 1)]
        over_fanin: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the planted matrix (planted family).
        #[arg(long)]
        matrix_out: Option<PathBuf>,
    },
    /// Evaluate a circuit on one input, or on every input.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        /// Input bits, coordinate 0 first.
        #[arg(long)]
        x: Option<Gf2Vector>,
    },
    /// Exhaustively compare two circuits.
    VerifyEquiv {
        /// Give `--in` twice.
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = EXHAUSTIVE_CAP)]
        cap: usize,
    },
    /// Check a circuit against a matrix on the unit vectors.
    VerifyWeak {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Rewire every gate of fanin above n to the inputs.
    CapFanin {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = EXHAUSTIVE_CAP)]
        cap: usize,
    },
    /// Turn a depth-2 circuit with linear outputs into a parity circuit.
    Linearize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = EXHAUSTIVE_CAP)]
        cap: usize,
    },
    /// Encode a depth-2 parity-middle circuit computing a linear operator.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the stream as hexadecimal text.
        #[arg(long)]
        hex: bool,
        #[arg(long, default_value_t = EXHAUSTIVE_CAP)]
        cap: usize,
    },
    /// Apply an encoded operator to x, or print its matrix.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: Option<Gf2Vector>,
        /// The input file holds hexadecimal text.
        #[arg(long)]
        hex: bool,
    },
    /// Table of certified wire lower bounds for n = n_min, 2 n_min, ...
    Bounds {
        #[arg(long, default_value_t = 8)]
        n_min: u64,
        #[arg(long, default_value_t = 128)]
        n_max: u64,
        /// Compare with this file, or create it if missing.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized acceptance battery.
    Suite {
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory for failing circuits.
        #[arg(long, default_value = "witnesses")]
        witness_dir: PathBuf,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_circuit(path: &Path) -> Result<AnyCircuit> {
    parse_circuit(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_depth2(path: &Path) -> Result<Depth2Circuit> {
    match read_circuit(path)? {
        AnyCircuit::Depth2(c) => Ok(c),
        AnyCircuit::General(_) => bail!(
            "{} holds a general circuit, expected depth2",
            path.display()
        ),
    }
}

fn read_general(path: &Path) -> Result<GeneralCircuit> {
    match read_circuit(path)? {
        AnyCircuit::General(c) => Ok(c),
        AnyCircuit::Depth2(_) => bail!(
            "{} holds a depth2 circuit, expected general",
            path.display()
        ),
    }
}

fn read_matrix(path: &Path) -> Result<Gf2Matrix> {
    Gf2Matrix::parse_text(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn as_dyn(c: &AnyCircuit) -> &dyn Circuit {
    match c {
        AnyCircuit::Depth2(c) => c,
        AnyCircuit::General(c) => c,
    }
}

fn to_hex(bytes: &[u8]) -> String {
    let mut s: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
    s.push('\n');
    s
}

fn from_hex(text: &str) -> Result<Vec<u8>> {
    let digits: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if !digits.len().is_multiple_of(2) {
        bail!("odd number of hex digits");
    }
    digits
        .chunks(2)
        .map(|pair| {
            let s: String = pair.iter().collect();
            u8::from_str_radix(&s, 16).with_context(|| format!("bad hex byte {s:?}"))
        })
        .collect()
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::GenMatrix {
            n,
            seed,
            density,
            out,
        } => {
            let m = gen::random_matrix(n, n, density, &mut seeded(seed))?;
            emit(out.as_deref(), &m.to_text())?;
        }
        Command::GenCircuit {
            family,
            n,
            r,
            seed,
            density,
            over_fanin,
            out,
            matrix_out,
        } => {
            let mut rng = seeded(seed);
            let text = match family {
                Family::Random => gen::random_depth2(n, r, density, &mut rng)?.to_text(),
                Family::Cancelling => {
                    gen::cancelling_middle_instance(n, r, density, &mut rng)?.to_text()
                }
                Family::Planted => {
                    let inst = gen::planted_parity_instance(n, r, density, &mut rng)?;
                    if let Some(path) = &matrix_out {
                        emit(Some(path), &inst.matrix.to_text())?;
                    }
                    inst.circuit.to_text()
                }
                Family::General => gen::random_general(n, r, over_fanin, &mut rng)?.to_text(),
            };
            if matrix_out.is_some() && !matches!(family, Family::Planted) {
                bail!("--matrix-out only applies to the planted family");
            }
            emit(out.as_deref(), &text)?;
        }
        Command::Eval { input, x } => {
            let c = read_circuit(&input)?;
            let c = as_dyn(&c);
            match x {
                Some(x) => println!("y={}", c.eval(&x)?),
                None => {
                    for x in gatewire::circuit::all_inputs(c.inputs()) {
                        println!("x={x} y={}", c.eval(&x)?);
                    }
                }
            }
        }
        Command::VerifyEquiv { inputs, cap } => {
            if inputs.len() != 2 {
                bail!("verify-equiv takes exactly two --in circuits");
            }
            let left = read_circuit(&inputs[0])?;
            let right = read_circuit(&inputs[1])?;
            let (left, right) = (as_dyn(&left), as_dyn(&right));
            match find_counterexample(left, right, cap)? {
                None => println!("equivalent=true"),
                Some(x) => {
                    println!("equivalent=false");
                    println!("x={x}");
                    println!("left={}", left.eval(&x)?);
                    println!("right={}", right.eval(&x)?);
                    return Ok(Verdict::Fail);
                }
            }
        }
        Command::VerifyWeak { input, matrix } => {
            let c = read_circuit(&input)?;
            let c = as_dyn(&c);
            let a = read_matrix(&matrix)?;
            if weakly_computes(c, &a)? {
                println!("weak=true");
            } else {
                println!("weak=false");
                let n = c.inputs();
                let i = (0..n)
                    .find(|&i| c.eval(&Gf2Vector::unit(n, i)).ok() != Some(a.column(i)))
                    .expect("some unit vector disagrees");
                let x = Gf2Vector::unit(n, i);
                println!("x={x}");
                println!("circuit={}", c.eval(&x)?);
                println!("matrix={}", a.column(i));
                return Ok(Verdict::Fail);
            }
        }
        Command::CapFanin { input, out, cap } => {
            let c = read_general(&input)?;
            let capped = cap_fanin(&c, cap)?;
            emit(out.as_deref(), &capped.to_text())?;
            if out.is_some() {
                println!("wires_before={}", c.wires());
                println!("wires_after={}", capped.wires());
                println!("max_fanin_before={}", c.max_fanin());
                println!("max_fanin_after={}", capped.max_fanin());
            }
        }
        Command::Linearize { input, out, cap } => {
            let c = read_depth2(&input)?;
            let (lin, report) = linearize(&c, cap)?;
            let lin = lin.to_depth2();
            if let Some(path) = &out {
                emit(Some(path), &lin.to_text())?;
            }
            print!("{}", report.to_kv());
            if let Some(x) = find_counterexample(&c, &lin, cap)? {
                println!("equivalent=false");
                println!("x={x}");
                return Ok(Verdict::Fail);
            }
            println!("equivalent=true");
            if !report.ok() {
                return Ok(Verdict::Fail);
            }
        }
        Command::Encode {
            input,
            out,
            hex,
            cap,
        } => {
            let c = read_depth2(&input)?;
            let enc = encode(&c, cap)?;
            let bytes = enc.serialize();
            match (&out, hex) {
                (Some(path), false) => fs::write(path, &bytes)
                    .with_context(|| format!("writing {}", path.display()))?,
                (path, true) => emit(path.as_deref(), &to_hex(&bytes))?,
                (None, false) => bail!("binary output needs --out (or use --hex)"),
            }
            if out.is_some() {
                println!("n={}", enc.n());
                println!("r={}", enc.r());
                println!("wires={}", enc.wires());
                println!("bits={}", enc.bit_length());
                println!("bound={}", enc.length_bound());
            }
        }
        Command::Decode { input, x, hex } => {
            let raw = fs::read(&input).with_context(|| format!("reading {}", input.display()))?;
            let bytes = if hex {
                from_hex(std::str::from_utf8(&raw).context("hex input is not text")?)?
            } else {
                raw
            };
            let enc = OperatorEncoding::deserialize(&bytes)?;
            let decoder = Decoder::new(&enc);
            match x {
                Some(x) => println!("y={}", decoder.decode(&x)?),
                None => {
                    let n = enc.n();
                    let columns = (0..n)
                        .map(|j| decoder.decode(&Gf2Vector::unit(n, j)))
                        .collect::<Result<Vec<_>, _>>()?;
                    print!("{}", Gf2Matrix::from_columns(n, &columns)?.to_text());
                }
            }
        }
        Command::Bounds {
            n_min,
            n_max,
            golden,
            out,
        } => {
            if n_min < 2 || n_max < n_min {
                bail!("need 2 <= n_min <= n_max");
            }
            let table = bounds::doubling_table(n_min, n_max)?;
            emit(out.as_deref(), &table)?;
            if let Some(path) = golden {
                if path.exists() {
                    let expected = read_text(&path)?;
                    if expected != table {
                        let line = expected
                            .lines()
                            .zip(table.lines())
                            .position(|(a, b)| a != b)
                            .unwrap_or(expected.lines().count().min(table.lines().count()));
                        eprintln!("golden={} mismatch at line {}", path.display(), line + 1);
                        return Ok(Verdict::Fail);
                    }
                    eprintln!("golden={} match", path.display());
                } else {
                    emit(Some(&path), &table)?;
                    eprintln!("golden={} written", path.display());
                }
            }
        }
        Command::Suite {
            trials,
            n_max,
            seed,
            witness_dir,
        } => {
            let config = suite::SuiteConfig {
                trials,
                n_max,
                seed,
                witness_dir,
            };
            let ok = suite::run(&config, &mut std::io::stdout().lock())?;
            if !ok {
                return Ok(Verdict::Fail);
            }
        }
    }
    Ok(Verdict::Pass)
}
