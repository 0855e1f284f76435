//! Line-oriented instance and solution files.
//!
//! Grammar (one record per line, fields separated by whitespace, ids 1-based):
//!
//! ```text
//! c <free text>                      comment, allowed anywhere
//! p rf <nodes> <arcs>                header; `rf`, `mf` or `adp`
//! k <s> <t> [demand]                 one line per commodity
//! a <id> <tail> <head> <u> <c> <g>   rf arc
//! a <id> <tail> <head> <u>           mf arc
//! a <id> <tail> <head>               adp arc
//! b <B_I> [B_F]                      rf budgets, exactly once
//! ```
//!
//! Numbers are decimals (`2.5`), fractions (`5/2`) or `inf`. The header must
//! precede every other record. Arc ids must be a permutation of `1..=arcs`;
//! arcs may appear in any order. Canonical form lists comments first, then the
//! header, commodities, arcs by id and budgets, with numbers written as reduced
//! fractions; parsing and writing a canonical file reproduces it byte for byte.
//!
//! Solution files hold `x <amount> <arc ids...>` path lines, optional
//! `z <arc> <path> <amount>` steals referring to the `x` lines by position and
//! optional `cplus <arc> <amount>` cost increases. Lines starting with `s` or
//! `cstar` are ignored so a solver report can be fed back in unchanged.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{validate_instance, Arc, ArcId, Budgets, Network, Path, PathFlow, Terminal};
use crate::reductions::{AdpInstance, MfInstance};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Rf,
    Mf,
    Adp,
}

impl InstanceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InstanceKind::Rf => "rf",
            InstanceKind::Mf => "mf",
            InstanceKind::Adp => "adp",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RfInstance<T> {
    pub comments: Vec<String>,
    pub network: Network<T>,
    pub budgets: Budgets<T>,
}

impl<T: Scalar> RfInstance<T> {
    pub fn new(network: Network<T>, budgets: Budgets<T>) -> Self {
        RfInstance {
            comments: Vec::new(),
            network,
            budgets,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<T> {
    pub flow: PathFlow<T>,
    /// `(arc, index of the x line, amount)`
    pub steals: Vec<(ArcId, usize, T)>,
    /// Cost increase per arc; `None` when the file has no `cplus` lines.
    pub increase: Option<Vec<T>>,
    /// Paths in file order, for resolving steal indices.
    pub paths: Vec<Path>,
}

struct Line<'a> {
    number: usize,
    tag: &'a str,
    fields: Vec<&'a str>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Splits `text` into records, returning comments separately.
fn lines(text: &str) -> (Vec<String>, Vec<Line<'_>>) {
    let mut comments = Vec::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_end();
        if trimmed == "c" {
            comments.push(String::new());
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("c ") {
            comments.push(rest.to_string());
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        if let Some(tag) = fields.next() {
            out.push(Line {
                number: i + 1,
                tag,
                fields: fields.collect(),
            });
        }
    }
    (comments, out)
}

/// Reads the `p` header without parsing the body.
pub fn detect_kind(text: &str) -> Result<InstanceKind> {
    let (_, records) = lines(text);
    let first = records.first().ok_or_else(|| err(1, "empty file"))?;
    header(first).map(|(kind, _, _)| kind)
}

fn header(line: &Line<'_>) -> Result<(InstanceKind, usize, usize)> {
    if line.tag != "p" {
        return Err(err(line.number, "expected `p` header before any other record"));
    }
    if line.fields.len() != 3 {
        return Err(err(line.number, "header needs `p <kind> <nodes> <arcs>`"));
    }
    let kind = match line.fields[0] {
        "rf" => InstanceKind::Rf,
        "mf" => InstanceKind::Mf,
        "adp" => InstanceKind::Adp,
        other => return Err(err(line.number, format!("unknown problem kind `{other}`"))),
    };
    let n = count(line, line.fields[1])?;
    let m = count(line, line.fields[2])?;
    Ok((kind, n, m))
}

fn count(line: &Line<'_>, token: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| err(line.number, format!("expected a non-negative integer, got `{token}`")))
}

fn index(line: &Line<'_>, token: &str) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(err(line.number, format!("expected a 1-based index, got `{token}`"))),
    }
}

fn number<T: Scalar>(line: &Line<'_>, token: &str) -> Result<T> {
    T::parse_token(token).ok_or_else(|| err(line.number, format!("expected a finite number, got `{token}`")))
}

fn ext<T: Scalar>(line: &Line<'_>, token: &str) -> Result<Ext<T>> {
    Ext::parse_token(token).ok_or_else(|| err(line.number, format!("expected a number or `inf`, got `{token}`")))
}

fn arity(line: &Line<'_>, allowed: &[usize], usage: &str) -> Result<()> {
    if allowed.contains(&line.fields.len()) {
        Ok(())
    } else {
        Err(err(line.number, format!("expected `{usage}`")))
    }
}

/// Shared body reader: the header, then commodity, arc and budget records.
struct Body<'a> {
    comments: Vec<String>,
    kind: InstanceKind,
    nodes: usize,
    commodities: Vec<&'a Line<'a>>,
    arcs: Vec<Option<&'a Line<'a>>>,
    budgets: Vec<&'a Line<'a>>,
}

fn body<'a>(comments: Vec<String>, records: &'a [Line<'a>], expected: InstanceKind) -> Result<Body<'a>> {
    let first = records.first().ok_or_else(|| err(1, "empty file"))?;
    let (kind, nodes, m) = header(first)?;
    if kind != expected {
        return Err(err(
            first.number,
            format!("expected a `{}` instance, found `{}`", expected.as_str(), kind.as_str()),
        ));
    }
    let mut out = Body {
        comments,
        kind,
        nodes,
        commodities: Vec::new(),
        arcs: vec![None; m],
        budgets: Vec::new(),
    };
    for line in &records[1..] {
        match line.tag {
            "k" => out.commodities.push(line),
            "a" => {
                let id = match line.fields.first() {
                    Some(tok) => index(line, tok)?,
                    None => return Err(err(line.number, "arc record without id")),
                };
                let slot = out
                    .arcs
                    .get_mut(id)
                    .ok_or_else(|| err(line.number, format!("arc id {} exceeds header count {m}", id + 1)))?;
                if slot.is_some() {
                    return Err(err(line.number, format!("duplicate arc id {}", id + 1)));
                }
                *slot = Some(line);
            }
            "b" if kind == InstanceKind::Rf => out.budgets.push(line),
            "p" => return Err(err(line.number, "duplicate header")),
            other => return Err(err(line.number, format!("unknown record `{other}`"))),
        }
    }
    if let Some(missing) = out.arcs.iter().position(Option::is_none) {
        return Err(err(first.number, format!("arc {} is missing", missing + 1)));
    }
    Ok(out)
}

impl Body<'_> {
    fn arc_lines(&self) -> impl Iterator<Item = &Line<'_>> {
        self.arcs.iter().map(|l| l.expect("checked in body"))
    }

    fn endpoints(&self, line: &Line<'_>) -> Result<(usize, usize)> {
        let tail = index(line, line.fields[1])?;
        let head = index(line, line.fields[2])?;
        for v in [tail, head] {
            if v >= self.nodes {
                return Err(err(
                    line.number,
                    format!("node {} exceeds header count {}", v + 1, self.nodes),
                ));
            }
        }
        Ok((tail, head))
    }
}

/// Parses and validates an `rf` instance.
pub fn parse_rf<T: Scalar>(text: &str) -> Result<RfInstance<T>> {
    let (comments, records) = lines(text);
    let b = body(comments, &records, InstanceKind::Rf)?;
    debug_assert_eq!(b.kind, InstanceKind::Rf);
    let mut terminals = Vec::new();
    for line in &b.commodities {
        arity(line, &[2, 3], "k <s> <t> [demand]")?;
        let mut t = Terminal::new(index(line, line.fields[0])?, index(line, line.fields[1])?);
        if let Some(tok) = line.fields.get(2) {
            t.demand = Some(number(line, tok)?);
        }
        terminals.push(t);
    }
    let mut arcs = Vec::new();
    for line in b.arc_lines() {
        arity(line, &[6], "a <id> <tail> <head> <u> <c> <gamma>")?;
        let (tail, head) = b.endpoints(line)?;
        arcs.push(Arc::new(
            tail,
            head,
            ext(line, line.fields[3])?,
            ext(line, line.fields[4])?,
            ext(line, line.fields[5])?,
        ));
    }
    let budgets = match b.budgets.as_slice() {
        [line] => {
            arity(line, &[1, 2], "b <B_I> [B_F]")?;
            let bi = number(line, line.fields[0])?;
            match line.fields.get(1) {
                Some(tok) => Budgets::both(bi, number(line, tok)?),
                None => Budgets::interdictor(bi),
            }
        }
        [] => return Err(err(records.last().map_or(1, |l| l.number), "missing `b` record")),
        [_, second, ..] => return Err(err(second.number, "duplicate `b` record")),
    };
    let network = Network::new(b.nodes, arcs, terminals);
    let violations = validate_instance(&network, &budgets);
    if !violations.is_empty() {
        return Err(Error::InvalidInstance(violations));
    }
    Ok(RfInstance {
        comments: b.comments,
        network,
        budgets,
    })
}

pub fn parse_mf<T: Scalar>(text: &str) -> Result<MfInstance<T>> {
    let (comments, records) = lines(text);
    let b = body(comments, &records, InstanceKind::Mf)?;
    let mut commodities = Vec::new();
    for line in &b.commodities {
        arity(line, &[3], "k <s> <t> <demand>")?;
        let (s, t) = (index(line, line.fields[0])?, index(line, line.fields[1])?);
        let d: T = number(line, line.fields[2])?;
        if s >= b.nodes || t >= b.nodes || s == t {
            return Err(err(line.number, "commodity endpoints must be distinct existing nodes"));
        }
        if d <= T::zero() {
            return Err(err(line.number, "demand must be positive"));
        }
        commodities.push((s, t, d));
    }
    if commodities.is_empty() {
        return Err(err(1, "no commodities"));
    }
    let mut arcs = Vec::new();
    for line in b.arc_lines() {
        arity(line, &[4], "a <id> <tail> <head> <u>")?;
        let (tail, head) = b.endpoints(line)?;
        let u = ext(line, line.fields[3])?;
        if u.is_negative() {
            return Err(err(line.number, "capacity must be non-negative"));
        }
        arcs.push((tail, head, u));
    }
    Ok(MfInstance {
        num_nodes: b.nodes,
        arcs,
        commodities,
    })
}

pub fn parse_adp(text: &str) -> Result<AdpInstance> {
    let (comments, records) = lines(text);
    let b = body(comments, &records, InstanceKind::Adp)?;
    if b.commodities.len() != 2 {
        return Err(err(records[0].number, "an adp instance has exactly two `k` records"));
    }
    let mut pairs = Vec::new();
    for line in &b.commodities {
        arity(line, &[2], "k <s> <t>")?;
        let (s, t) = (index(line, line.fields[0])?, index(line, line.fields[1])?);
        if s >= b.nodes || t >= b.nodes || s == t {
            return Err(err(line.number, "terminals must be distinct existing nodes"));
        }
        pairs.push((s, t));
    }
    let mut arcs = Vec::new();
    for line in b.arc_lines() {
        arity(line, &[3], "a <id> <tail> <head>")?;
        arcs.push(b.endpoints(line)?);
    }
    Ok(AdpInstance {
        num_nodes: b.nodes,
        arcs,
        s1: pairs[0].0,
        t1: pairs[0].1,
        s2: pairs[1].0,
        t2: pairs[1].1,
    })
}

fn write_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
}

/// Canonical text for an `rf` instance.
pub fn write_rf<T: Scalar>(instance: &RfInstance<T>) -> String {
    let net = &instance.network;
    let mut out = String::new();
    write_comments(&mut out, &instance.comments);
    let _ = writeln!(out, "p rf {} {}", net.num_nodes(), net.num_arcs());
    for t in net.terminals() {
        let _ = write!(out, "k {} {}", t.source, t.sink);
        if let Some(d) = &t.demand {
            let _ = write!(out, " {}", d.to_token());
        }
        out.push('\n');
    }
    for (i, a) in net.arcs().iter().enumerate() {
        let _ = writeln!(
            out,
            "a {} {} {} {} {} {}",
            i + 1,
            a.tail,
            a.head,
            a.capacity.to_token(),
            a.cost.to_token(),
            a.price.to_token()
        );
    }
    let _ = write!(out, "b {}", instance.budgets.interdictor.to_token());
    if let Some(bf) = &instance.budgets.flow_player {
        let _ = write!(out, " {}", bf.to_token());
    }
    out.push('\n');
    out
}

pub fn write_mf<T: Scalar>(mf: &MfInstance<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p mf {} {}", mf.num_nodes, mf.arcs.len());
    for (s, t, d) in &mf.commodities {
        let _ = writeln!(out, "k {} {} {}", s + 1, t + 1, d.to_token());
    }
    for (i, (tail, head, u)) in mf.arcs.iter().enumerate() {
        let _ = writeln!(out, "a {} {} {} {}", i + 1, tail + 1, head + 1, u.to_token());
    }
    out
}

pub fn write_adp(adp: &AdpInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p adp {} {}", adp.num_nodes, adp.arcs.len());
    let _ = writeln!(out, "k {} {}", adp.s1 + 1, adp.t1 + 1);
    let _ = writeln!(out, "k {} {}", adp.s2 + 1, adp.t2 + 1);
    for (i, (tail, head)) in adp.arcs.iter().enumerate() {
        let _ = writeln!(out, "a {} {} {}", i + 1, tail + 1, head + 1);
    }
    out
}

/// Parses a solution file against `network`. Paths are checked for arc ids
/// only; feasibility is left to the caller.
pub fn parse_solution<T: Scalar>(text: &str, network: &Network<T>) -> Result<Solution<T>> {
    let (_, records) = lines(text);
    let m = network.num_arcs();
    let arc_id = |line: &Line<'_>, tok: &str| -> Result<ArcId> {
        let i = index(line, tok)?;
        if i >= m {
            return Err(err(line.number, format!("arc {} does not exist", i + 1)));
        }
        Ok(ArcId(i))
    };
    let mut flow = PathFlow::new();
    let mut paths = Vec::new();
    let mut steals = Vec::new();
    let mut steal_lines = Vec::new();
    let mut increase: Option<Vec<T>> = None;
    for line in &records {
        match line.tag {
            "x" => {
                if line.fields.len() < 2 {
                    return Err(err(line.number, "expected `x <amount> <arc ids...>`"));
                }
                let amount: T = number(line, line.fields[0])?;
                let arcs = line.fields[1..]
                    .iter()
                    .map(|tok| arc_id(line, tok))
                    .collect::<Result<Vec<_>>>()?;
                let path = Path::new(arcs);
                paths.push(path.clone());
                flow.add(path, amount);
            }
            "z" => {
                arity(line, &[3], "z <arc> <path> <amount>")?;
                let arc = arc_id(line, line.fields[0])?;
                let p = index(line, line.fields[1])?;
                steals.push((arc, p, number(line, line.fields[2])?));
                steal_lines.push(line.number);
            }
            "cplus" => {
                arity(line, &[2], "cplus <arc> <amount>")?;
                let arc = arc_id(line, line.fields[0])?;
                let v = increase.get_or_insert_with(|| vec![T::zero(); m]);
                v[arc.0] = number(line, line.fields[1])?;
            }
            "s" | "cstar" => {}
            other => return Err(err(line.number, format!("unknown record `{other}`"))),
        }
    }
    for (&(_, p, _), &number) in steals.iter().zip(&steal_lines) {
        if p >= paths.len() {
            return Err(err(
                number,
                format!("steal refers to path {} but only {} given", p + 1, paths.len()),
            ));
        }
    }
    Ok(Solution {
        flow,
        steals,
        increase,
        paths,
    })
}

/// `x` lines for a path flow, sorted as the flow iterates.
pub fn write_flow<T: Scalar>(flow: &PathFlow<T>) -> String {
    let mut out = String::new();
    for (path, amount) in flow.iter() {
        let _ = write!(out, "x {}", amount.to_token());
        for a in path.arcs() {
            let _ = write!(out, " {a}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    const MINIMAL: &str = "p rf 2 1\nk 1 2\na 1 1 2 1 1 0\nb 0\n";

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn minimal_file() {
        let inst: RfInstance<Rational> = parse_rf(MINIMAL).unwrap();
        assert_eq!(inst.network.terminals().len(), 1);
        assert_eq!(inst.network.num_arcs(), 1);
        assert_eq!(write_rf(&inst), MINIMAL);
    }

    #[test]
    fn inf_and_fraction_tokens() {
        let text = "p rf 2 1\nk 1 2\na 1 1 2 inf 3/2 inf\nb 0.5 1\n";
        let inst: RfInstance<Rational> = parse_rf(text).unwrap();
        let arc = &inst.network.arcs()[0];
        assert_eq!(arc.capacity, Ext::Infinite);
        assert_eq!(arc.cost, Ext::Finite(q(3, 2)));
        assert_eq!(arc.price, Ext::Infinite);
        assert_eq!(inst.budgets, Budgets::both(q(1, 2), q(1, 1)));
        let f: RfInstance<f64> = parse_rf(text).unwrap();
        assert_eq!(f.network.arcs()[0].cost, Ext::Finite(1.5));
    }

    #[test]
    fn canonical_round_trip_preserves_comments_and_orders_arcs() {
        let text = "p rf 3 2\nc late comment\nk 1 3 2\na 2 2 3 1 2 1\na 1 1 2 4/2 inf 0\nb 1 3\n";
        let inst: RfInstance<Rational> = parse_rf(text).unwrap();
        let canon = write_rf(&inst);
        assert_eq!(
            canon,
            "c late comment\np rf 3 2\nk 1 3 2\na 1 1 2 2 inf 0\na 2 2 3 1 2 1\nb 1 3\n"
        );
        assert_eq!(write_rf(&parse_rf::<Rational>(&canon).unwrap()), canon);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("k 1 2\n", 1),
            ("p rf 2 1\nk 1 2\na 1 1 2 1 1\nb 0\n", 3),
            ("p rf 2 1\nk 1 2\na 1 1 2 1 x 0\nb 0\n", 3),
            ("p rf 2 1\nk 1 2\na 1 1 2 1 1 0\nq 5\nb 0\n", 4),
            ("p rf 2 1\nk 1 2\na 1 1 2 1 1 0\na 1 1 2 1 1 0\nb 0\n", 4),
            ("p rf 2 1\nk 1 2\na 1 1 3 1 1 0\nb 0\n", 3),
            ("p rf 2 1\nk 0 2\na 1 1 2 1 1 0\nb 0\n", 2),
            ("p rf 2 1\nk 1 2\na 1 1 2 1 1 0\nb 0\nb 1\n", 5),
        ];
        for (text, line) in cases {
            match parse_rf::<Rational>(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn missing_arc_and_budget_rejected() {
        assert!(matches!(
            parse_rf::<Rational>("p rf 2 2\nk 1 2\na 1 1 2 1 1 0\nb 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_rf::<Rational>("p rf 2 1\nk 1 2\na 1 1 2 1 1 0\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn semantic_errors_come_from_validation() {
        let text = "p rf 2 1\nk 1 1\na 1 1 2 -1 1 0\nb 0\n";
        match parse_rf::<Rational>(text) {
            Err(Error::InvalidInstance(v)) => assert_eq!(v.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kind_detection() {
        assert_eq!(detect_kind("c hi\np mf 2 0\n").unwrap(), InstanceKind::Mf);
        assert_eq!(detect_kind(MINIMAL).unwrap(), InstanceKind::Rf);
        assert!(detect_kind("p lp 1 1\n").is_err());
        assert!(parse_mf::<Rational>(MINIMAL).is_err());
    }

    #[test]
    fn mf_and_adp_round_trip() {
        let mf = "p mf 3 2\nk 1 3 1/2\nk 2 3 1\na 1 1 3 inf\na 2 2 3 2\n";
        assert_eq!(write_mf(&parse_mf::<Rational>(mf).unwrap()), mf);
        let adp = "p adp 4 2\nk 1 2\nk 3 4\na 1 1 2\na 2 3 4\n";
        let parsed = parse_adp(adp).unwrap();
        assert_eq!((parsed.s2, parsed.t2), (2, 3));
        assert_eq!(write_adp(&parsed), adp);
        assert!(parse_adp("p adp 2 0\nk 1 2\n").is_err());
    }

    #[test]
    fn solution_lines() {
        let inst: RfInstance<Rational> =
            parse_rf("p rf 3 3\nk 1 3\na 1 1 2 1 1 0\na 2 2 3 1 2 0\na 3 1 3 1 1 0\nb 1\n").unwrap();
        let text = "s value 1\nx 1 1 2\nx 1/2 3\nz 1 1 1/2\ncplus 3 2\n";
        let sol = parse_solution(text, &inst.network).unwrap();
        assert_eq!(sol.flow.value(), q(3, 2));
        assert_eq!(sol.steals, vec![(ArcId(0), 0, q(1, 2))]);
        assert_eq!(sol.increase.unwrap(), vec![q(0, 1), q(0, 1), q(2, 1)]);
        assert_eq!(write_flow(&sol.flow), "x 1 1 2\nx 1/2 3\n");
        assert!(parse_solution("x 1 4\n", &inst.network).is_err());
        assert!(parse_solution("x 1 1 2\nz 1 2 1\n", &inst.network).is_err());
    }
}
