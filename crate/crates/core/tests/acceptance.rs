//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gatewire::bounds::{self, BoundParams};
use gatewire::circuit::{collapse, equivalent, gen, Circuit};
use gatewire::compress::{encode, Decoder};
use gatewire::gf2::solve_in_span;
use gatewire::rng::trial_rng;
use gatewire::transforms::{
    cap_fanin, linearize, normalize_output_xor, remove_direct_wires, zero_normalize_middle,
};
use gatewire::{Depth2Circuit, Gf2Matrix, Gf2Vector, LinearDepth2Circuit};
use num_bigint::BigUint;
use rand::Rng;

const SEED: u64 = 0x5eed_2024;
const CAP: usize = 8;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn linearization_equivalence() -> Outcome {
    let mut trials = 0;
    let mut worst = i64::MIN;
    for t in 0..600u64 {
        let mut rng = trial_rng(SEED, t);
        let n = 3 + (t % 6) as usize;
        let r = 1 + ((t / 6) % 12) as usize;
        let density = rng.gen_range(0.2..0.8);
        let c =
            gen::cancelling_middle_instance(n, r, density, &mut rng).map_err(|e| e.to_string())?;
        let (lin, report) = linearize(&c, CAP).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(
            equivalent(&c, &lin, CAP).map_err(|e| e.to_string())?,
            || format!("trial {t}: linearized circuit differs\n{}", c.to_text()),
        )?;
        let before = c.wires();
        let after = lin.wires();
        ensure(after <= before + 2 * n, || {
            format!(
                "trial {t}: {after} wires > {before} + 2*{n}\n{}",
                c.to_text()
            )
        })?;
        worst = worst.max(after as i64 - before as i64 - 2 * n as i64);
        ensure(
            report.wires_before == before && report.wires_after == after,
            || format!("trial {t}: report disagrees with recount"),
        )?;
        trials += 1;
    }
    Ok(format!("{trials} instances, max (added - 2n) = {worst}"))
}

fn stage_budgets() -> Outcome {
    let mut trials = 0;
    for t in 0..600u64 {
        let mut rng = trial_rng(SEED, t);
        let n = 3 + (t % 6) as usize;
        let r = 1 + ((t / 6) % 12) as usize;
        let density = rng.gen_range(0.2..0.8);
        let c =
            gen::cancelling_middle_instance(n, r, density, &mut rng).map_err(|e| e.to_string())?;
        let relayed = remove_direct_wires(&c);
        let xored = normalize_output_xor(&relayed).map_err(|e| e.to_string())?;
        let normalized = zero_normalize_middle(&xored).map_err(|e| e.to_string())?;
        let (w0, w1, w2, w3) = (
            c.wires(),
            relayed.wires(),
            xored.wires(),
            normalized.wires(),
        );
        ensure(w1 <= w0 + n, || {
            format!("trial {t}: direct removal {w0} -> {w1}")
        })?;
        ensure(w2 <= w1 + n, || {
            format!("trial {t}: output xor {w1} -> {w2}")
        })?;
        ensure(w3 == w2, || {
            format!("trial {t}: zero normalization {w2} -> {w3}")
        })?;
        ensure(
            normalized.second_level_wires() == xored.second_level_wires()
                && normalized.first_level_wires() <= xored.first_level_wires(),
            || format!("trial {t}: zero normalization changed levels"),
        )?;
        // h(e_i) has a 1 at j only if x_i is wired to h_j.
        let mut m_ones = 0;
        for i in 0..n {
            let h = normalized
                .middle_values(&Gf2Vector::unit(n, i))
                .map_err(|e| e.to_string())?;
            for j in h.ones() {
                ensure(normalized.middle()[j].inputs.contains(&i), || {
                    format!("trial {t}: M[{i}][{j}] = 1 without a wire")
                })?;
                m_ones += 1;
            }
        }
        ensure(m_ones <= normalized.first_level_wires(), || {
            format!("trial {t}: |M| = {m_ones} exceeds first level")
        })?;
        let (_, report) = linearize(&c, CAP).map_err(|e| e.to_string())?;
        ensure(
            report.stage_budgets_hold() && report.m.count_ones() == m_ones,
            || format!("trial {t}: report\n{}", report.to_kv()),
        )?;
        trials += 1;
    }
    Ok(format!("{trials} instances, 0 violations"))
}

fn codec_roundtrip() -> Outcome {
    let mut trials = 0;
    let mut slack = usize::MAX;
    for t in 0..600u64 {
        let mut rng = trial_rng(SEED ^ 3, t);
        let n = 3 + (t % 6) as usize;
        let r = 1 + ((t / 6) % 12) as usize;
        let density = rng.gen_range(0.2..0.8);
        let inst =
            gen::planted_parity_instance(n, r, density, &mut rng).map_err(|e| e.to_string())?;
        let c = &inst.circuit;
        let enc = encode(c, CAP).map_err(|e| format!("trial {t}: {e}"))?;
        let decoder = Decoder::new(&enc);
        let table = collapse(c, CAP).map_err(|e| e.to_string())?;
        for (x_index, expected) in table.values().iter().enumerate() {
            let x = Gf2Vector::from_index(n, x_index as u64);
            let got = decoder.decode(&x).map_err(|e| format!("trial {t}: {e}"))?;
            ensure(&got == expected, || {
                format!("trial {t}: decode differs at x={x}")
            })?;
        }
        let columns = (0..n)
            .map(|j| decoder.decode(&Gf2Vector::unit(n, j)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let recovered = Gf2Matrix::from_columns(n, &columns).map_err(|e| e.to_string())?;
        ensure(recovered == inst.matrix, || {
            format!("trial {t}: planted matrix not recovered")
        })?;

        let bytes = enc.serialize();
        let w = usize::BITS as usize - n.max(r).leading_zeros() as usize;
        let t_sum: usize = (0..n)
            .map(|i| {
                let rows: Vec<usize> = c.outputs()[i].middle.clone();
                naive_rank(&rows.iter().map(|&j| middle_row(c, j)).collect::<Vec<_>>())
            })
            .sum();
        let bound = 96 + 16 * n + 2 * c.wires() * w + t_sum;
        let bits = bytes.len() * 8;
        ensure(bits <= bound, || {
            format!("trial {t}: {bits} bits > bound {bound}")
        })?;
        slack = slack.min(bound - bits);
        let back = gatewire::OperatorEncoding::deserialize(&bytes).map_err(|e| e.to_string())?;
        ensure(back == enc, || {
            format!("trial {t}: serialization roundtrip")
        })?;
        trials += 1;
    }
    Ok(format!(
        "{trials} instances, min slack to length bound {slack} bits"
    ))
}

fn middle_row(c: &Depth2Circuit, j: usize) -> Vec<u8> {
    let mut row = vec![0; c.n()];
    for &i in &c.middle()[j].inputs {
        row[i] = 1;
    }
    row
}

fn fanin_capping() -> Outcome {
    let mut trials = 0;
    for t in 0..250u64 {
        let mut rng = trial_rng(SEED ^ 4, t);
        let n = 2 + (t % 7) as usize;
        let gate_count = rng.gen_range(3..=12);
        let over = rng.gen_range(1..=3.min(gate_count - 1));
        let c = gen::random_general(n, gate_count, over, &mut rng).map_err(|e| e.to_string())?;
        ensure(c.max_fanin() > n, || {
            format!("trial {t}: no injected fanin")
        })?;
        let capped = cap_fanin(&c, CAP).map_err(|e| e.to_string())?;
        ensure(
            collapse(&c, CAP).map_err(|e| e.to_string())?
                == collapse(&capped, CAP).map_err(|e| e.to_string())?,
            || format!("trial {t}: operator changed\n{}", c.to_text()),
        )?;
        ensure(capped.max_fanin() <= n, || {
            format!("trial {t}: fanin still above n")
        })?;
        ensure(capped.wires() <= c.wires(), || {
            format!("trial {t}: wires increased")
        })?;
        let twice = cap_fanin(&capped, CAP).map_err(|e| e.to_string())?;
        ensure(twice == capped, || format!("trial {t}: not idempotent"))?;
        trials += 1;
    }
    Ok(format!("{trials} circuits, 0 violations"))
}

fn ceil_log2_oracle(x: u64) -> u64 {
    let mut k = 0;
    while (1u128 << k) < u128::from(x) {
        k += 1;
    }
    k
}

fn general_upper_oracle(n: u64, l: u64) -> BigUint {
    let m = 2 * n * n;
    let one = BigUint::from(1u8);
    BigUint::from(m) * ceil_log2_oracle(n + 1)
        + BigUint::from(l) * ceil_log2_oracle(m)
        + BigUint::from(m - n / 2) * (one.clone() << (2 * l).div_ceil(n))
        + BigUint::from(n.div_ceil(2)) * (one << n)
}

fn counting_bounds() -> Outcome {
    let ns = [8u64, 16, 32, 64, 128];
    let golden = include_str!("golden/bounds_table.txt");
    let table = bounds::doubling_table(8, 128).map_err(|e| e.to_string())?;
    ensure(table == golden, || {
        format!("table differs from golden\n{table}")
    })?;
    let mut stars = Vec::new();
    for &n in &ns {
        let l = bounds::min_wires_lower_bound(&BoundParams::new(n).unwrap())
            .map_err(|e| e.to_string())?;
        let target = BigUint::from(n) << n;
        ensure(l < n * n, || format!("L*({n}) = {l} not below n^2"))?;
        ensure(general_upper_oracle(n, l) < target, || {
            format!("n={n}: U(L*) not below n 2^n")
        })?;
        ensure(general_upper_oracle(n, l + 1) >= target, || {
            format!("n={n}: L* not maximal")
        })?;
        stars.push(l);
    }
    for (k, pair) in stars.windows(2).enumerate() {
        ensure(pair[1] >= 2 * pair[0], || {
            format!(
                "L*({}) = {} < 2 L*({}) = {}",
                ns[k + 1],
                pair[1],
                ns[k],
                2 * pair[0]
            )
        })?;
    }
    Ok(format!(
        "L* = {stars:?} for n = {ns:?}; golden table matches"
    ))
}

fn linear_counting() -> Outcome {
    // ratio = L·log2(n)/n² must lie in [1/2, 1]; n is a power of two so the
    // check is exact.
    let mut ratios = Vec::new();
    for k in 4..=8u64 {
        let n = 1u64 << k;
        let l = bounds::linear_circuit_lower_bound(n).map_err(|e| e.to_string())?;
        ensure(l >= 1 && l <= n * n, || {
            format!("n={n}: L = {l} out of range")
        })?;
        let num = l * k;
        let den = n * n;
        ensure(2 * num >= den && num <= den, || {
            format!("n={n}: ratio {num}/{den} outside [1/2, 1]")
        })?;
        ratios.push(format!("{n}:{}", num * 1000 / den));
    }
    Ok(format!("ratio x1000 {} in [500, 1000]", ratios.join(" ")))
}

fn weak_vs_full() -> Outcome {
    let mut trials = 0;
    let mut agree_true = 0;
    for t in 0..300u64 {
        let mut rng = trial_rng(SEED ^ 7, t);
        let n = 1 + (t % 8) as usize;
        let r = rng.gen_range(1..=2 * n);
        let lin = LinearDepth2Circuit::new(
            Gf2Matrix::random(r, n, &mut rng),
            Gf2Matrix::random(n, r, &mut rng),
            Gf2Vector::zeros(n),
        )
        .map_err(|e| e.to_string())?;
        let exact = lin.c().mul(lin.b()).map_err(|e| e.to_string())?;
        let a = match t % 3 {
            0 => exact,
            1 => {
                let mut a = exact;
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                a.set(i, j, !a.get(i, j));
                a
            }
            _ => Gf2Matrix::random(n, n, &mut rng),
        };
        let weak = gatewire::circuit::weakly_computes(&lin, &a).map_err(|e| e.to_string())?;
        let full = equivalent(&lin, &LinearDepth2Circuit::from_matrix(&a), CAP)
            .map_err(|e| e.to_string())?;
        ensure(weak == full, || {
            format!("trial {t}: weak={weak} full={full}")
        })?;
        agree_true += usize::from(weak);
        trials += 1;
    }
    Ok(format!(
        "{trials} comparisons ({agree_true} computing), 0 discrepancies"
    ))
}

fn naive_rank(rows: &[Vec<u8>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] == 1) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[col] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn to_rows(m: &Gf2Matrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| u8::from(m.get(i, j))).collect())
        .collect()
}

fn columns_as_rows(m: &Gf2Matrix, cols: &[usize]) -> Vec<Vec<u8>> {
    cols.iter()
        .map(|&j| (0..m.rows()).map(|i| u8::from(m.get(i, j))).collect())
        .collect()
}

fn gf2_kernels() -> Outcome {
    let mut checks = 0;
    for t in 0..1200u64 {
        let mut rng = trial_rng(SEED ^ 8, t);
        let rows = rng.gen_range(0..=12);
        let cols = rng.gen_range(0..=12);
        let density = rng.gen_range(0.1..0.9);
        let m = Gf2Matrix::random_with_density(rows, cols, density, &mut rng);
        let rank = naive_rank(&to_rows(&m));
        ensure(m.rank() == rank, || {
            format!("trial {t}: rank {} vs {rank}", m.rank())
        })?;

        // Greedy first basis: keep column j iff it raises the rank of the kept set.
        let mut basis = Vec::new();
        for j in 0..cols {
            let mut trial = basis.clone();
            trial.push(j);
            if naive_rank(&columns_as_rows(&m, &trial)) == trial.len() {
                basis = trial;
            }
        }
        ensure(m.first_basis_columns() == basis, || {
            format!("trial {t}: first basis")
        })?;

        let vectors: Vec<Gf2Vector> = basis.iter().map(|&j| m.column(j)).collect();
        let y = if rng.gen_bool(0.5) {
            Gf2Vector::random(rows, &mut rng)
        } else {
            let mut y = Gf2Vector::zeros(rows);
            for v in &vectors {
                if rng.gen_bool(0.5) {
                    y.xor_assign(v);
                }
            }
            y
        };
        let brute = (0..1u64 << vectors.len()).find(|&mask| {
            let mut s = Gf2Vector::zeros(rows);
            for (k, v) in vectors.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    s.xor_assign(v);
                }
            }
            s == y
        });
        match (solve_in_span(&vectors, &y), brute) {
            (Ok(l), Some(mask)) => ensure(l.to_index() == Some(mask), || {
                format!("trial {t}: coefficients {l} vs mask {mask}")
            })?,
            (Err(_), None) => {}
            (got, want) => return Err(format!("trial {t}: solve {got:?} vs {want:?}")),
        }
        checks += 1;
    }

    let mut products = 0u64;
    for rows in 0..=8 {
        for cols in 0..=8 {
            let mut rng = trial_rng(SEED ^ 9, (rows * 9 + cols) as u64);
            for _ in 0..3 {
                let m = Gf2Matrix::random(rows, cols, &mut rng);
                for x in 0..1u64 << cols {
                    let v = Gf2Vector::from_index(cols, x);
                    let mut want = Gf2Vector::zeros(rows);
                    for i in 0..rows {
                        let mut acc = false;
                        for j in 0..cols {
                            acc ^= m.get(i, j) && v.get(j);
                        }
                        want.set(i, acc);
                    }
                    let got = m.matvec(&v).map_err(|e| e.to_string())?;
                    ensure(got == want, || format!("matvec {rows}x{cols} at x={x}"))?;
                    products += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checks} matrices vs naive elimination, {products} exhaustive matvecs"
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "linearization equivalence and 2n budget",
            limit: Some(Duration::from_secs(60)),
            run: linearization_equivalence,
        },
        Criterion {
            id: 2,
            name: "per-stage wire budgets",
            limit: None,
            run: stage_budgets,
        },
        Criterion {
            id: 3,
            name: "codec roundtrip, matrix recovery, length bound",
            limit: Some(Duration::from_secs(60)),
            run: codec_roundtrip,
        },
        Criterion {
            id: 4,
            name: "fanin capping",
            limit: None,
            run: fanin_capping,
        },
        Criterion {
            id: 5,
            name: "counting bounds and golden table",
            limit: Some(Duration::from_secs(10)),
            run: counting_bounds,
        },
        Criterion {
            id: 6,
            name: "linear counting ratio",
            limit: None,
            run: linear_counting,
        },
        Criterion {
            id: 7,
            name: "weak vs full computation",
            limit: None,
            run: weak_vs_full,
        },
        Criterion {
            id: 8,
            name: "GF(2) kernels vs naive oracle",
            limit: None,
            run: gf2_kernels,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(detail), Some(limit)) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.1?} > {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS {} ({elapsed:.2?}): {detail}",
                c.id, c.name
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL {} ({elapsed:.2?}): {detail}",
                    c.id, c.name
                );
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
