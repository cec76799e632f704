//! Line-oriented, version-tagged text formats.
//!
//! ```text
//! depth2 v1
//! n <n> r <r>
//! mid <j>: in <i1> <i2> ... ; tt <hex>
//! out <i>: mid <j1> ... ; direct <i1> ... ; tt <hex>
//! ```
//!
//! ```text
//! general v1
//! n <n>
//! gate <id>: pred <id> ... ; tt <hex>
//! outputs <id> ...
//! ```
//!
//! Truth tables use [`TruthTable::to_hex`]. Blank lines and lines starting
//! with `#` are ignored.

use std::fmt::Write as _;

use super::{
    CircuitError, Depth2Circuit, Gate, GeneralCircuit, MiddleGate, OutputGate, Result, TruthTable,
};

/// Either kind of circuit read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyCircuit {
    Depth2(Depth2Circuit),
    General(GeneralCircuit),
}

fn join(list: &[usize]) -> String {
    let mut s = String::new();
    for k in list {
        write!(s, " {k}").expect("writing to a String");
    }
    s
}

impl Depth2Circuit {
    pub fn to_text(&self) -> String {
        let mut s = format!("depth2 v1\nn {} r {}\n", self.n(), self.middle_count());
        for (j, g) in self.middle().iter().enumerate() {
            writeln!(
                s,
                "mid {j}: in{} ; tt {}",
                join(&g.inputs),
                g.table.to_hex()
            )
            .expect("writing to a String");
        }
        for (i, g) in self.outputs().iter().enumerate() {
            writeln!(
                s,
                "out {i}: mid{} ; direct{} ; tt {}",
                join(&g.middle),
                join(&g.direct),
                g.table.to_hex()
            )
            .expect("writing to a String");
        }
        s
    }
}

impl GeneralCircuit {
    pub fn to_text(&self) -> String {
        let n = self.node_count() - self.gates().len();
        let mut s = format!("general v1\nn {n}\n");
        for (k, g) in self.gates().iter().enumerate() {
            writeln!(
                s,
                "gate {}: pred{} ; tt {}",
                n + k,
                join(&g.preds),
                g.table.to_hex()
            )
            .expect("writing to a String");
        }
        writeln!(s, "outputs{}", join(self.outputs())).expect("writing to a String");
        s
    }
}

impl AnyCircuit {
    pub fn to_text(&self) -> String {
        match self {
            AnyCircuit::Depth2(c) => c.to_text(),
            AnyCircuit::General(c) => c.to_text(),
        }
    }
}

struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        Self {
            inner: Box::new(inner),
            last: 0,
        }
    }

    fn next(&mut self, expecting: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((k, l)) => {
                self.last = k;
                Ok((k, l))
            }
            None => Err(err(
                self.last + 1,
                format!("unexpected end of input, expected {expecting}"),
            )),
        }
    }

    fn finish(mut self) -> Result<()> {
        match self.inner.next() {
            Some((k, l)) => Err(err(k, format!("unexpected trailing line {l:?}"))),
            None => Ok(()),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> CircuitError {
    CircuitError::Parse {
        line,
        message: message.into(),
    }
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| err(line, format!("expected a number, found {tok:?}")))
}

/// Parses `<keyword> <numbers...>`.
fn keyword_list(line: usize, segment: &str, keyword: &str) -> Result<Vec<usize>> {
    let mut toks = segment.split_whitespace();
    match toks.next() {
        Some(k) if k == keyword => toks.map(|t| number(line, t)).collect(),
        other => Err(err(
            line,
            format!("expected `{keyword}`, found {:?}", other.unwrap_or("")),
        )),
    }
}

fn table_segment(line: usize, segment: &str, fanin: usize) -> Result<TruthTable> {
    let mut toks = segment.split_whitespace();
    match (toks.next(), toks.next(), toks.next()) {
        (Some("tt"), Some(hex), None) => {
            TruthTable::from_hex(fanin, hex).map_err(|e| err(line, e.to_string()))
        }
        _ => Err(err(line, format!("expected `tt <hex>`, found {segment:?}"))),
    }
}

/// Splits `<keyword> <index>: <segments separated by ;>`.
fn gate_line<'a>(
    line: usize,
    text: &'a str,
    keyword: &str,
    expected: usize,
) -> Result<Vec<&'a str>> {
    let (head, body) = text
        .split_once(':')
        .ok_or_else(|| err(line, "missing `:`"))?;
    let id = keyword_list(line, head, keyword)?;
    if id != [expected] {
        return Err(err(
            line,
            format!("expected `{keyword} {expected}`, found {head:?}"),
        ));
    }
    Ok(body.split(';').map(str::trim).collect())
}

fn parse_depth2(lines: &mut Lines<'_>) -> Result<Depth2Circuit> {
    let (k, sizes) = lines.next("`n <n> r <r>`")?;
    let toks: Vec<&str> = sizes.split_whitespace().collect();
    let (n, r) = match toks[..] {
        ["n", n, "r", r] => (number(k, n)?, number(k, r)?),
        _ => return Err(err(k, format!("expected `n <n> r <r>`, found {sizes:?}"))),
    };
    let mut middle = Vec::with_capacity(r);
    for j in 0..r {
        let (k, l) = lines.next("a `mid` line")?;
        let segs = gate_line(k, l, "mid", j)?;
        let [inputs, tt] = segs[..] else {
            return Err(err(k, "expected `in ... ; tt <hex>`"));
        };
        let inputs = keyword_list(k, inputs, "in")?;
        let table = table_segment(k, tt, inputs.len())?;
        middle.push(MiddleGate { inputs, table });
    }
    let mut outputs = Vec::with_capacity(n);
    for i in 0..n {
        let (k, l) = lines.next("an `out` line")?;
        let segs = gate_line(k, l, "out", i)?;
        let [mid, direct, tt] = segs[..] else {
            return Err(err(k, "expected `mid ... ; direct ... ; tt <hex>`"));
        };
        let mid = keyword_list(k, mid, "mid")?;
        let direct = keyword_list(k, direct, "direct")?;
        let table = table_segment(k, tt, mid.len() + direct.len())?;
        outputs.push(OutputGate {
            middle: mid,
            direct,
            table,
        });
    }
    Depth2Circuit::new(n, middle, outputs).map_err(|e| err(lines.last, e.to_string()))
}

fn parse_general(lines: &mut Lines<'_>) -> Result<GeneralCircuit> {
    let (k, size) = lines.next("`n <n>`")?;
    let n = match size.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", n] => number(k, n)?,
        _ => return Err(err(k, format!("expected `n <n>`, found {size:?}"))),
    };
    let mut gates = Vec::new();
    loop {
        let (k, l) = lines.next("a `gate` or `outputs` line")?;
        if l.starts_with("outputs") {
            let outputs = keyword_list(k, l, "outputs")?;
            return GeneralCircuit::new(n, gates, outputs).map_err(|e| err(k, e.to_string()));
        }
        let segs = gate_line(k, l, "gate", n + gates.len())?;
        let [preds, tt] = segs[..] else {
            return Err(err(k, "expected `pred ... ; tt <hex>`"));
        };
        let preds = keyword_list(k, preds, "pred")?;
        let table = table_segment(k, tt, preds.len())?;
        gates.push(Gate { preds, table });
    }
}

/// Parses either circuit format, dispatching on the header line.
pub fn parse_circuit(text: &str) -> Result<AnyCircuit> {
    let mut lines = Lines::new(text);
    let (k, header) = lines.next("a header")?;
    let circuit = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["depth2", "v1"] => AnyCircuit::Depth2(parse_depth2(&mut lines)?),
        ["general", "v1"] => AnyCircuit::General(parse_general(&mut lines)?),
        _ => return Err(err(k, format!("unknown header {header:?}"))),
    };
    lines.finish()?;
    Ok(circuit)
}

impl std::str::FromStr for Depth2Circuit {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self> {
        match parse_circuit(s)? {
            AnyCircuit::Depth2(c) => Ok(c),
            AnyCircuit::General(_) => Err(err(1, "expected a depth2 circuit")),
        }
    }
}

impl std::str::FromStr for GeneralCircuit {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self> {
        match parse_circuit(s)? {
            AnyCircuit::General(c) => Ok(c),
            AnyCircuit::Depth2(_) => Err(err(1, "expected a general circuit")),
        }
    }
}
