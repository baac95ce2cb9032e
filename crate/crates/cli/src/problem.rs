//! The line-oriented problem file: a field, a quiver, named representations
//! and morphisms, a generator list and command settings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use uniloc_core::{Error as CoreError, FieldSpec, Mat, Quiver, Rep, RepMorphism, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unresolved reference to '{name}'")]
    Unresolved { line: usize, name: String },
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::Unresolved { line, .. }
            | ParseError::Invalid { line, .. } => *line,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: String,
    pub target: String,
    pub map: RepMorphism,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub budget: Option<usize>,
    pub max_steps: Option<usize>,
    pub dim_bound: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub quiver: Arc<Quiver>,
    pub reps: BTreeMap<String, Rep>,
    pub morphisms: BTreeMap<String, Morphism>,
    pub generators: Vec<String>,
    /// Command operands such as `m` and `n`, each naming a representation.
    pub operands: BTreeMap<String, String>,
    pub params: Params,
}

type Lines<'a> = std::iter::Peekable<std::vec::IntoIter<(usize, &'a str)>>;

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn invalid(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Invalid { line, msg: msg.into() }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || "_.-'".contains(c))
}

/// `[a b; c d]` with the expected shape; `[]` stands for any matrix with no
/// entries.
fn parse_matrix(
    field: FieldSpec,
    text: &str,
    rows: usize,
    cols: usize,
    line: usize,
    what: &str,
) -> Result<Mat, ParseError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| syntax(line, format!("{what}: expected a bracketed matrix")))?;
    if inner.trim().is_empty() {
        if rows * cols != 0 {
            return Err(invalid(
                line,
                format!("{what}: expected a {rows}x{cols} matrix, got an empty one"),
            ));
        }
        return Ok(Mat::zeros(field, rows, cols));
    }
    let parsed: Vec<Vec<&str>> = inner.split(';').map(|r| r.split_whitespace().collect()).collect();
    let got_cols = parsed[0].len();
    if parsed.iter().any(|r| r.len() != got_cols) {
        return Err(syntax(line, format!("{what}: rows of unequal length")));
    }
    if parsed.len() != rows || got_cols != cols {
        return Err(invalid(
            line,
            format!(
                "{what}: expected a {rows}x{cols} matrix, got {}x{got_cols}",
                parsed.len()
            ),
        ));
    }
    let data = parsed
        .iter()
        .flatten()
        .map(|t| field.parse(t).map_err(|e| invalid(line, format!("{what}: {e}"))))
        .collect::<Result<Vec<Scalar>, _>>()?;
    Mat::from_scalars(field, rows, cols, data).map_err(|e| invalid(line, e.to_string()))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.trim()
        .parse()
        .map_err(|_| syntax(line, format!("'{tok}' is not a nonnegative integer")))
}

struct Builder {
    field: Option<FieldSpec>,
    quiver: Option<Arc<Quiver>>,
    reps: BTreeMap<String, Rep>,
    morphisms: BTreeMap<String, Morphism>,
    generators: Option<(usize, Vec<String>)>,
    operands: BTreeMap<String, (usize, String)>,
    params: Params,
}

impl Builder {
    fn field(&self, line: usize) -> Result<FieldSpec, ParseError> {
        self.field.ok_or_else(|| syntax(line, "'field' must come first"))
    }

    fn quiver(&self, line: usize) -> Result<Arc<Quiver>, ParseError> {
        self.quiver
            .clone()
            .ok_or_else(|| syntax(line, "'quiver' must come before representations"))
    }

    fn quiver_block(&mut self, line: usize, rest: &str, lines: &mut Lines) -> Result<(), ParseError> {
        if self.quiver.is_some() {
            return Err(syntax(line, "second quiver"));
        }
        let words: Vec<&str> = rest.split_whitespace().collect();
        let q = match words.as_slice() {
            ["linear", n] => Quiver::linear(parse_usize(n, line)?),
            ["kronecker"] => Quiver::kronecker(),
            [] => {
                let mut labels: Option<Vec<String>> = None;
                let mut arrows = Vec::new();
                let mut arrow_labels = Vec::new();
                loop {
                    let (l, text) = lines
                        .next()
                        .ok_or_else(|| syntax(line, "quiver block is not closed by 'end'"))?;
                    let w: Vec<&str> = text.split_whitespace().collect();
                    match w.as_slice() {
                        ["end"] => break,
                        ["vertices", rest @ ..] if labels.is_none() => {
                            if rest.iter().any(|s| !is_name(s)) {
                                return Err(syntax(l, "bad vertex label"));
                            }
                            labels = Some(rest.iter().map(|s| s.to_string()).collect());
                        }
                        ["arrow", name, from, to] => {
                            let vs = labels
                                .as_ref()
                                .ok_or_else(|| syntax(l, "'vertices' must precede arrows"))?;
                            let find = |v: &str| {
                                vs.iter().position(|x| x == v).ok_or_else(|| ParseError::Unresolved {
                                    line: l,
                                    name: v.to_string(),
                                })
                            };
                            if !is_name(name) || arrow_labels.iter().any(|x| x == name) {
                                return Err(syntax(l, format!("bad or repeated arrow label '{name}'")));
                            }
                            arrows.push((find(from)?, find(to)?));
                            arrow_labels.push(name.to_string());
                        }
                        _ => return Err(syntax(l, format!("unexpected '{text}' in quiver block"))),
                    }
                }
                let labels = labels.ok_or_else(|| syntax(line, "quiver block without 'vertices'"))?;
                let mut seen = labels.clone();
                seen.sort();
                seen.dedup();
                if seen.len() != labels.len() {
                    return Err(syntax(line, "repeated vertex label"));
                }
                Quiver::with_labels(labels, arrows, arrow_labels).map_err(|e| invalid(line, e.to_string()))?
            }
            _ => {
                return Err(syntax(
                    line,
                    "expected 'quiver', 'quiver linear N' or 'quiver kronecker'",
                ))
            }
        };
        self.quiver = Some(Arc::new(q));
        Ok(())
    }

    fn rep_block(&mut self, line: usize, rest: &str, lines: &mut Lines) -> Result<(), ParseError> {
        let field = self.field(line)?;
        let q = self.quiver(line)?;
        let (name, dims) = rest
            .split_once('[')
            .ok_or_else(|| syntax(line, "expected 'rep NAME [d1 d2 ...]'"))?;
        let name = name.trim();
        if !is_name(name) {
            return Err(syntax(line, format!("bad name '{name}'")));
        }
        if self.reps.contains_key(name) || self.morphisms.contains_key(name) {
            return Err(invalid(line, format!("'{name}' is defined twice")));
        }
        let dims: Vec<usize> = dims
            .trim()
            .strip_suffix(']')
            .ok_or_else(|| syntax(line, "unclosed dimension vector"))?
            .split_whitespace()
            .map(|t| parse_usize(t, line))
            .collect::<Result<_, _>>()?;
        if dims.len() != q.vertex_count() {
            return Err(invalid(
                line,
                format!(
                    "dimension vector has {} entries for {} vertices",
                    dims.len(),
                    q.vertex_count()
                ),
            ));
        }
        let mut maps: Vec<Option<Mat>> = vec![None; q.arrow_count()];
        loop {
            let (l, text) = lines
                .next()
                .ok_or_else(|| syntax(line, format!("rep '{name}' is not closed by 'end'")))?;
            if text == "end" {
                break;
            }
            let (arrow, m) = text
                .split_once('=')
                .ok_or_else(|| syntax(l, "expected 'ARROW = [...]'"))?;
            let arrow = arrow.trim();
            let a = q.arrow_index(arrow).ok_or_else(|| ParseError::Unresolved {
                line: l,
                name: arrow.to_string(),
            })?;
            if maps[a].is_some() {
                return Err(invalid(l, format!("arrow {arrow} given twice")));
            }
            let (i, j) = q.arrow(a);
            maps[a] = Some(parse_matrix(field, m, dims[j], dims[i], l, &format!("arrow {arrow}"))?);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(a, m)| match m {
                Some(m) => Ok(m),
                None => {
                    let (i, j) = q.arrow(a);
                    if dims[i] * dims[j] == 0 {
                        Ok(Mat::zeros(field, dims[j], dims[i]))
                    } else {
                        Err(invalid(
                            line,
                            format!("rep '{name}': no matrix for arrow {}", q.arrow_label(a)),
                        ))
                    }
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rep = Rep::new(q, field, dims, maps).map_err(|e| invalid(line, e.to_string()))?;
        self.reps.insert(name.to_string(), rep);
        Ok(())
    }

    fn morphism_block(&mut self, line: usize, rest: &str, lines: &mut Lines) -> Result<(), ParseError> {
        let field = self.field(line)?;
        let q = self.quiver(line)?;
        let (name, ends) = rest
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected 'morphism NAME : SOURCE -> TARGET'"))?;
        let name = name.trim();
        let (src, tgt) = ends
            .split_once("->")
            .ok_or_else(|| syntax(line, "expected 'morphism NAME : SOURCE -> TARGET'"))?;
        let (src, tgt) = (src.trim(), tgt.trim());
        if !is_name(name) {
            return Err(syntax(line, format!("bad name '{name}'")));
        }
        if self.reps.contains_key(name) || self.morphisms.contains_key(name) {
            return Err(invalid(line, format!("'{name}' is defined twice")));
        }
        let lookup = |n: &str| {
            self.reps.get(n).cloned().ok_or_else(|| ParseError::Unresolved {
                line,
                name: n.to_string(),
            })
        };
        let (m, n) = (lookup(src)?, lookup(tgt)?);
        let mut maps: Vec<Option<Mat>> = vec![None; q.vertex_count()];
        loop {
            let (l, text) = lines
                .next()
                .ok_or_else(|| syntax(line, format!("morphism '{name}' is not closed by 'end'")))?;
            if text == "end" {
                break;
            }
            let (vertex, mtext) = text
                .split_once('=')
                .ok_or_else(|| syntax(l, "expected 'VERTEX = [...]'"))?;
            let vertex = vertex.trim();
            let v = q.vertex_index(vertex).ok_or_else(|| ParseError::Unresolved {
                line: l,
                name: vertex.to_string(),
            })?;
            if maps[v].is_some() {
                return Err(invalid(l, format!("vertex {vertex} given twice")));
            }
            maps[v] = Some(parse_matrix(
                field,
                mtext,
                n.dim(v),
                m.dim(v),
                l,
                &format!("vertex {vertex}"),
            )?);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(v, x)| match x {
                Some(x) => Ok(x),
                None if m.dim(v) * n.dim(v) == 0 => Ok(Mat::zeros(field, n.dim(v), m.dim(v))),
                None => Err(invalid(
                    line,
                    format!("morphism '{name}': no matrix at vertex {}", q.vertex_label(v)),
                )),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let map = RepMorphism::new(m, n, maps).map_err(|e| match e {
            CoreError::NotCommuting {
                arrow,
                source_vertex,
                target_vertex,
            } => invalid(
                line,
                format!(
                    "morphism '{name}' does not commute with arrow {} ({} -> {})",
                    q.arrow_label(arrow),
                    q.vertex_label(source_vertex),
                    q.vertex_label(target_vertex)
                ),
            ),
            other => invalid(line, other.to_string()),
        })?;
        self.morphisms.insert(
            name.to_string(),
            Morphism {
                source: src.to_string(),
                target: tgt.to_string(),
                map,
            },
        );
        Ok(())
    }

    fn set(&mut self, line: usize, rest: &str) -> Result<(), ParseError> {
        let (key, value) = rest
            .split_once('=')
            .ok_or_else(|| syntax(line, "expected 'set KEY = VALUE'"))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "budget" => self.params.budget = Some(parse_usize(value, line)?),
            "max-steps" => self.params.max_steps = Some(parse_usize(value, line)?),
            "dim-bound" => {
                let n = self.quiver(line)?.vertex_count();
                let d: Vec<usize> = value
                    .split(',')
                    .map(|t| parse_usize(t, line))
                    .collect::<Result<_, _>>()?;
                if d.len() != n {
                    return Err(invalid(
                        line,
                        format!("dim-bound has {} entries for {n} vertices", d.len()),
                    ));
                }
                self.params.dim_bound = Some(d);
            }
            _ if is_name(key) && is_name(value) => {
                self.operands.insert(key.to_string(), (line, value.to_string()));
            }
            _ => return Err(syntax(line, format!("bad setting '{rest}'"))),
        }
        Ok(())
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let numbered: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut lines: Lines = numbered.into_iter().peekable();
    let mut b = Builder {
        field: None,
        quiver: None,
        reps: BTreeMap::new(),
        morphisms: BTreeMap::new(),
        generators: None,
        operands: BTreeMap::new(),
        params: Params::default(),
    };
    while let Some((line, text)) = lines.next() {
        let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match head {
            "field" => {
                if b.field.is_some() {
                    return Err(syntax(line, "second field"));
                }
                b.field = Some(match rest {
                    "Q" => FieldSpec::Rationals,
                    p => FieldSpec::prime(parse_usize(p, line)? as u64).map_err(|e| invalid(line, e.to_string()))?,
                });
            }
            "quiver" => {
                b.field(line)?;
                b.quiver_block(line, rest, &mut lines)?;
            }
            "rep" => b.rep_block(line, rest, &mut lines)?,
            "morphism" => b.morphism_block(line, rest, &mut lines)?,
            "generators" => {
                if b.generators.is_some() {
                    return Err(syntax(line, "second generator list"));
                }
                b.generators = Some((line, rest.split_whitespace().map(str::to_string).collect()));
            }
            "set" => b.set(line, rest)?,
            _ => return Err(syntax(line, format!("unknown directive '{head}'"))),
        }
    }
    let field = b.field.ok_or_else(|| syntax(1, "missing 'field'"))?;
    let quiver = b.quiver.ok_or_else(|| syntax(1, "missing 'quiver'"))?;
    let generators = match b.generators {
        Some((line, names)) => {
            for n in &names {
                if !b.reps.contains_key(n) {
                    return Err(ParseError::Unresolved { line, name: n.clone() });
                }
            }
            names
        }
        None => Vec::new(),
    };
    let mut operands = BTreeMap::new();
    for (key, (line, value)) in b.operands {
        if !b.reps.contains_key(&value) && !b.morphisms.contains_key(&value) {
            return Err(ParseError::Unresolved { line, name: value });
        }
        operands.insert(key, value);
    }
    Ok(ProblemFile {
        field,
        quiver,
        reps: b.reps,
        morphisms: b.morphisms,
        generators,
        operands,
        params: b.params,
    })
}

fn write_matrix(out: &mut String, m: &Mat) {
    out.push('[');
    for r in 0..m.rows() {
        if r > 0 {
            out.push_str("; ");
        }
        let row: Vec<String> = m.row(r).iter().map(|s| s.to_string()).collect();
        out.push_str(&row.join(" "));
    }
    out.push(']');
}

/// Canonical text of a problem file: everything spelled out, names sorted.
pub fn serialize_problem(p: &ProblemFile) -> String {
    let q = &p.quiver;
    let mut out = String::new();
    let field = match p.field {
        FieldSpec::Prime(n) => n.to_string(),
        FieldSpec::Rationals => "Q".to_string(),
    };
    writeln!(out, "field {field}").unwrap();
    out.push_str("quiver\n");
    writeln!(out, "  vertices {}", q.vertex_labels().join(" ")).unwrap();
    for (a, &(i, j)) in q.arrows().iter().enumerate() {
        writeln!(
            out,
            "  arrow {} {} {}",
            q.arrow_label(a),
            q.vertex_label(i),
            q.vertex_label(j)
        )
        .unwrap();
    }
    out.push_str("end\n");
    for (name, r) in &p.reps {
        let dims: Vec<String> = r.dims().iter().map(|d| d.to_string()).collect();
        writeln!(out, "rep {name} [{}]", dims.join(" ")).unwrap();
        for a in 0..q.arrow_count() {
            write!(out, "  {} = ", q.arrow_label(a)).unwrap();
            write_matrix(&mut out, r.map(a));
            out.push('\n');
        }
        out.push_str("end\n");
    }
    for (name, m) in &p.morphisms {
        writeln!(out, "morphism {name} : {} -> {}", m.source, m.target).unwrap();
        for v in 0..q.vertex_count() {
            write!(out, "  {} = ", q.vertex_label(v)).unwrap();
            write_matrix(&mut out, m.map.map(v));
            out.push('\n');
        }
        out.push_str("end\n");
    }
    if !p.generators.is_empty() {
        writeln!(out, "generators {}", p.generators.join(" ")).unwrap();
    }
    for (k, v) in &p.operands {
        writeln!(out, "set {k} = {v}").unwrap();
    }
    if let Some(b) = p.params.budget {
        writeln!(out, "set budget = {b}").unwrap();
    }
    if let Some(s) = p.params.max_steps {
        writeln!(out, "set max-steps = {s}").unwrap();
    }
    if let Some(d) = &p.params.dim_bound {
        let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        writeln!(out, "set dim-bound = {}", d.join(",")).unwrap();
    }
    out
}
