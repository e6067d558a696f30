//! The line-based workspace format.
//!
//! ```text
//! field 2
//! vertices 2
//! arrow a 1 2
//! rep P1
//! dim 1 1
//! mat a 1 1 1
//! theta full S1 S2
//! filtration F full P1
//! level 2
//! span 2 1
//! level 1
//! ```
//!
//! Vertices and filtration labels are 1-based. A `filtration F T M` block
//! lists the chain `M_0 ⊂ M_1 ⊂ … ⊂ M_n = M` bottom first: each `level k`
//! opens the next subobject, whose quotient by the previous one must be
//! isomorphic to `Θ(k)`, and `span v e1 … ed` adds a basis vector at vertex
//! `v`. The top level spans all of `M` and takes no `span` lines.

use std::fmt::Write as _;
use std::sync::Arc;

use filtra_core::linalg::{Matrix, PrimeField};
use filtra_core::quiverrep::{is_isomorphic, restrict_to, Quiver, RepMorphism, Representation, ThetaFamily};
use filtra_core::{Conflation, Filtration};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkspaceError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error(transparent)]
    Core(#[from] filtra_core::Error),
}

type Result<T> = std::result::Result<T, WorkspaceError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub label: usize,
    pub spans: Vec<(usize, Vec<u32>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationSpec {
    pub name: String,
    pub theta: String,
    pub object: String,
    pub levels: Vec<Level>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub field: PrimeField,
    pub quiver: Arc<Quiver>,
    pub reps: Vec<(String, Representation)>,
    pub thetas: Vec<(String, Vec<String>)>,
    pub filtrations: Vec<FiltrationSpec>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices().chain(std::iter::once((code.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &code[s..i],
                    column: code[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn err(&self, at: usize, message: impl Into<String>) -> WorkspaceError {
        let column = self
            .tokens
            .get(at)
            .map(|t| t.column)
            .unwrap_or_else(|| self.tokens.last().map_or(1, |t| t.column + t.text.len()));
        WorkspaceError::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn invalid(&self, message: impl Into<String>) -> WorkspaceError {
        WorkspaceError::Validation {
            line: self.number,
            message: message.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<()> {
        match self.tokens.len().cmp(&n) {
            std::cmp::Ordering::Less => Err(self.err(self.tokens.len(), format!("`{}` expects {} arguments", self.tokens[0].text, n - 1))),
            std::cmp::Ordering::Greater => Err(self.err(n, "unexpected token")),
            std::cmp::Ordering::Equal => Ok(()),
        }
    }

    fn at_least(&self, n: usize) -> Result<()> {
        if self.tokens.len() < n {
            return Err(self.err(self.tokens.len(), format!("`{}` expects at least {} arguments", self.tokens[0].text, n - 1)));
        }
        Ok(())
    }

    fn text(&self, i: usize) -> &str {
        self.tokens[i].text
    }

    fn number<T: std::str::FromStr>(&self, i: usize) -> Result<T> {
        self.tokens[i]
            .text
            .parse()
            .map_err(|_| self.err(i, format!("expected a nonnegative integer, found `{}`", self.tokens[i].text)))
    }

    fn vertex(&self, i: usize, n: usize) -> Result<usize> {
        let v: usize = self.number(i)?;
        if v == 0 || v > n {
            return Err(self.err(i, format!("vertex {v} is outside 1..={n}")));
        }
        Ok(v - 1)
    }

    fn entries(&self, from: usize, field: PrimeField) -> Result<Vec<u32>> {
        (from..self.tokens.len())
            .map(|i| {
                let v: u64 = self.number(i)?;
                if v >= field.modulus() as u64 {
                    return Err(self.err(i, format!("entry {v} is not reduced modulo {}", field.modulus())));
                }
                Ok(v as u32)
            })
            .collect()
    }
}

fn check_name(line: &Line, i: usize, taken: bool) -> Result<String> {
    let name = line.text(i);
    if taken {
        return Err(line.invalid(format!("name `{name}` is already used")));
    }
    Ok(name.to_string())
}

#[derive(Default)]
struct PendingRep {
    name: String,
    line: usize,
    dims: Option<Vec<usize>>,
    mats: Vec<Option<Matrix>>,
}

struct Parser {
    field: Option<PrimeField>,
    vertices: Option<usize>,
    arrows: Vec<(String, usize, usize)>,
    quiver: Option<Arc<Quiver>>,
    reps: Vec<(String, Representation)>,
    pending: Option<PendingRep>,
    thetas: Vec<(String, Vec<String>, usize)>,
    filtrations: Vec<(FiltrationSpec, usize)>,
    in_filtration: bool,
}

impl Parser {
    fn name_taken(&self, name: &str) -> bool {
        self.reps.iter().any(|(n, _)| n == name)
            || self.pending.as_ref().is_some_and(|p| p.name == name)
            || self.thetas.iter().any(|(n, _, _)| n == name)
            || self.filtrations.iter().any(|(f, _)| f.name == name)
    }

    fn field(&self, line: &Line) -> Result<PrimeField> {
        self.field.ok_or_else(|| line.invalid("`field` must come first"))
    }

    fn quiver(&mut self, line: &Line) -> Result<Arc<Quiver>> {
        if let Some(q) = &self.quiver {
            return Ok(q.clone());
        }
        let n = self.vertices.ok_or_else(|| line.invalid("`vertices` must precede representations"))?;
        let q = Arc::new(Quiver::new(n, self.arrows.clone()).map_err(|e| line.invalid(e.to_string()))?);
        self.quiver = Some(q.clone());
        Ok(q)
    }

    fn finish_rep(&mut self) -> Result<()> {
        let Some(p) = self.pending.take() else {
            return Ok(());
        };
        let q = self.quiver.clone().expect("quiver is fixed before reps");
        let field = self.field.expect("field is fixed before reps");
        let invalid = |message: String| WorkspaceError::Validation { line: p.line, message };
        let dims = p.dims.ok_or_else(|| invalid(format!("representation `{}` has no `dim` line", p.name)))?;
        let mut maps = Vec::new();
        for (a, m) in q.arrows().iter().zip(p.mats) {
            let (r, c) = (dims[a.target], dims[a.source]);
            maps.push(match m {
                Some(m) => m,
                None if r * c == 0 => Matrix::zeros(field, r, c),
                None => return Err(invalid(format!("representation `{}` lacks a matrix for arrow `{}`", p.name, a.name))),
            });
        }
        let rep = Representation::new(q, field, dims, maps).map_err(|e| invalid(e.to_string()))?;
        self.reps.push((p.name, rep));
        Ok(())
    }

    fn line(&mut self, line: &Line) -> Result<()> {
        let keyword = line.text(0);
        if self.in_filtration && !matches!(keyword, "level" | "span") {
            self.in_filtration = false;
        }
        if keyword != "dim" && keyword != "mat" {
            self.finish_rep()?;
        }
        match keyword {
            "field" => {
                line.arity(2)?;
                if self.field.is_some() {
                    return Err(line.invalid("`field` given twice"));
                }
                let p: u32 = line.number(1)?;
                self.field = Some(PrimeField::new(p).map_err(|e| line.invalid(e.to_string()))?);
            }
            "vertices" => {
                line.arity(2)?;
                self.field(line)?;
                if self.vertices.is_some() {
                    return Err(line.invalid("`vertices` given twice"));
                }
                self.vertices = Some(line.number(1)?);
            }
            "arrow" => {
                line.arity(4)?;
                let n = self.vertices.ok_or_else(|| line.invalid("`vertices` must precede arrows"))?;
                if self.quiver.is_some() {
                    return Err(line.invalid("arrows must precede representations"));
                }
                let arrow = (line.text(1).to_string(), line.vertex(2, n)?, line.vertex(3, n)?);
                self.arrows.push(arrow);
                Quiver::new(n, self.arrows.clone()).map_err(|e| match e {
                    filtra_core::Error::InvalidQuiver(m) => line.invalid(m),
                    other => line.invalid(other.to_string()),
                })?;
            }
            "rep" => {
                line.arity(2)?;
                let q = self.quiver(line)?;
                let name = check_name(line, 1, self.name_taken(line.text(1)))?;
                self.pending = Some(PendingRep {
                    name,
                    line: line.number,
                    dims: None,
                    mats: vec![None; q.arrows().len()],
                });
            }
            "dim" => {
                let q = self.quiver.clone();
                let p = self.pending.as_mut().ok_or_else(|| line.err(0, "`dim` outside a `rep` block"))?;
                let q = q.expect("quiver is fixed inside a rep block");
                line.arity(1 + q.vertex_count())?;
                if p.dims.is_some() {
                    return Err(line.invalid("`dim` given twice"));
                }
                p.dims = Some((1..line.tokens.len()).map(|i| line.number(i)).collect::<Result<_>>()?);
            }
            "mat" => {
                let field = self.field(line)?;
                let q = self.quiver.clone();
                let p = self.pending.as_mut().ok_or_else(|| line.err(0, "`mat` outside a `rep` block"))?;
                let q = q.expect("quiver is fixed inside a rep block");
                let dims = p.dims.clone().ok_or_else(|| line.invalid("`dim` must precede `mat`"))?;
                line.at_least(4)?;
                let a = q
                    .arrow_index(line.text(1))
                    .ok_or_else(|| line.err(1, format!("unknown arrow `{}`", line.text(1))))?;
                let arrow = &q.arrows()[a];
                let (r, c): (usize, usize) = (line.number(2)?, line.number(3)?);
                if (r, c) != (dims[arrow.target], dims[arrow.source]) {
                    return Err(line.err(
                        2,
                        format!(
                            "arrow `{}` needs a {}×{} matrix, found {r}×{c}",
                            arrow.name, dims[arrow.target], dims[arrow.source]
                        ),
                    ));
                }
                if line.tokens.len() != 4 + r * c {
                    let at = (4 + r * c).min(line.tokens.len());
                    return Err(line.err(at, format!("expected {} entries, found {}", r * c, line.tokens.len() - 4)));
                }
                if p.mats[a].is_some() {
                    return Err(line.invalid(format!("arrow `{}` given twice", arrow.name)));
                }
                p.mats[a] = Some(Matrix::from_vec(field, r, c, line.entries(4, field)?)?);
            }
            "theta" => {
                line.at_least(3)?;
                self.quiver(line)?;
                let name = check_name(line, 1, self.name_taken(line.text(1)))?;
                let members = (2..line.tokens.len()).map(|i| line.text(i).to_string()).collect();
                self.thetas.push((name, members, line.number));
            }
            "filtration" => {
                line.arity(4)?;
                self.quiver(line)?;
                let name = check_name(line, 1, self.name_taken(line.text(1)))?;
                let spec = FiltrationSpec {
                    name,
                    theta: line.text(2).to_string(),
                    object: line.text(3).to_string(),
                    levels: Vec::new(),
                };
                self.filtrations.push((spec, line.number));
                self.in_filtration = true;
            }
            "level" => {
                line.arity(2)?;
                let (spec, _) = self
                    .filtrations
                    .last_mut()
                    .filter(|_| self.in_filtration)
                    .ok_or_else(|| line.err(0, "`level` outside a `filtration` block"))?;
                let label: usize = line.number(1)?;
                if label == 0 {
                    return Err(line.err(1, "labels start at 1"));
                }
                spec.levels.push(Level {
                    label,
                    spans: Vec::new(),
                });
            }
            "span" => {
                let field = self.field(line)?;
                let n = self.vertices.unwrap_or(0);
                let (spec, _) = self
                    .filtrations
                    .last_mut()
                    .filter(|_| self.in_filtration)
                    .ok_or_else(|| line.err(0, "`span` outside a `filtration` block"))?;
                let level = spec.levels.last_mut().ok_or_else(|| line.err(0, "`span` before any `level`"))?;
                line.at_least(2)?;
                let v = line.vertex(1, n)?;
                level.spans.push((v, line.entries(2, field)?));
            }
            other => return Err(line.err(0, format!("unknown keyword `{other}`"))),
        }
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<Workspace> {
    let mut p = Parser {
        field: None,
        vertices: None,
        arrows: Vec::new(),
        quiver: None,
        reps: Vec::new(),
        pending: None,
        thetas: Vec::new(),
        filtrations: Vec::new(),
        in_filtration: false,
    };
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        last = i + 1;
        p.line(&Line { number: i + 1, tokens })?;
    }
    p.finish_rep()?;
    let end = Line {
        number: last.max(1),
        tokens: Vec::new(),
    };
    let field = p.field.ok_or_else(|| end.invalid("missing `field`"))?;
    let quiver = p.quiver(&end)?;
    let ws = Workspace {
        field,
        quiver,
        reps: p.reps,
        thetas: Vec::new(),
        filtrations: Vec::new(),
    };
    let mut thetas = Vec::new();
    for (name, members, line) in p.thetas {
        for m in &members {
            if ws.rep(m).is_err() {
                return Err(WorkspaceError::Validation {
                    line,
                    message: format!("theta `{name}` names unknown representation `{m}`"),
                });
            }
        }
        thetas.push((name, members));
    }
    let mut ws = Workspace { thetas, ..ws };
    for (spec, line) in &p.filtrations {
        let invalid = |message: String| WorkspaceError::Validation { line: *line, message };
        if !ws.thetas.iter().any(|(n, _)| n == &spec.theta) {
            return Err(invalid(format!("filtration `{}` names unknown theta `{}`", spec.name, spec.theta)));
        }
        let object = ws.rep(&spec.object).map_err(|e| invalid(e.to_string()))?;
        for level in &spec.levels {
            for (v, vector) in &level.spans {
                if vector.len() != object.dim(*v) {
                    return Err(invalid(format!(
                        "filtration `{}`: span vectors at vertex {} need {} entries",
                        spec.name,
                        v + 1,
                        object.dim(*v)
                    )));
                }
            }
        }
    }
    ws.filtrations = p.filtrations.into_iter().map(|(s, _)| s).collect();
    Ok(ws)
}

impl Workspace {
    pub fn rep(&self, name: &str) -> Result<&Representation> {
        self.reps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| WorkspaceError::UnknownName {
                kind: "representation",
                name: name.to_string(),
            })
    }

    pub fn theta_names(&self, name: &str) -> Result<&[String]> {
        self.thetas
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.as_slice())
            .ok_or_else(|| WorkspaceError::UnknownName {
                kind: "theta family",
                name: name.to_string(),
            })
    }

    pub fn theta_members(&self, name: &str) -> Result<Vec<Representation>> {
        self.theta_names(name)?.iter().map(|m| self.rep(m).cloned()).collect()
    }

    /// The family, checked against the ordering condition.
    pub fn theta(&self, name: &str) -> Result<ThetaFamily> {
        Ok(ThetaFamily::new(self.theta_members(name)?)?)
    }

    pub fn filtration_spec(&self, name: &str) -> Result<&FiltrationSpec> {
        self.filtrations
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| WorkspaceError::UnknownName {
                kind: "filtration",
                name: name.to_string(),
            })
    }

    /// Builds the filtration named `name` together with its family.
    pub fn filtration(&self, name: &str) -> Result<(Filtration, ThetaFamily)> {
        let spec = self.filtration_spec(name)?;
        let theta = self.theta(&spec.theta)?;
        let object = self.rep(&spec.object)?.clone();
        let bad = |m: String| WorkspaceError::Core(filtra_core::Error::InvalidFiltration(format!("`{}`: {m}", spec.name)));
        if spec.levels.is_empty() {
            return Ok((Filtration::empty(&object)?, theta));
        }
        let n = self.quiver.vertex_count();
        let last = spec.levels.len() - 1;
        if !spec.levels[last].spans.is_empty() {
            return Err(bad("the top level must not list spans; it is the whole object".into()));
        }
        let mut steps = Vec::new();
        let mut labels = Vec::new();
        let mut witnesses = Vec::new();
        let zero = Representation::zero(self.quiver.clone(), self.field);
        let mut prev: (Representation, Vec<Matrix>) = (zero, (0..n).map(|v| Matrix::zeros(self.field, object.dim(v), 0)).collect());
        for (i, level) in spec.levels.iter().enumerate() {
            if level.label > theta.len() {
                return Err(bad(format!("label {} exceeds the family size {}", level.label, theta.len())));
            }
            let (sub, bases) = if i == last {
                let bases = (0..n).map(|v| Matrix::identity(self.field, object.dim(v))).collect();
                (object.clone(), bases)
            } else {
                let bases: Vec<Matrix> = (0..n)
                    .map(|v| {
                        let cols: Vec<Vec<u32>> = level.spans.iter().filter(|(w, _)| *w == v).map(|(_, e)| e.clone()).collect();
                        Matrix::from_columns(self.field, object.dim(v), &cols)
                    })
                    .collect();
                if bases.iter().any(|b| b.rank() != b.cols()) {
                    return Err(bad(format!("level {} has linearly dependent span vectors", i + 1)));
                }
                let (sub, _) = restrict_to(&object, &bases).map_err(|_| bad(format!("level {} is not a subrepresentation", i + 1)))?;
                (sub, bases)
            };
            let mut comps = Vec::with_capacity(n);
            for (b, pb) in bases.iter().zip(&prev.1) {
                let c = b
                    .solve_matrix(pb)?
                    .ok_or_else(|| bad(format!("level {} does not contain level {}", i + 1, i)))?;
                comps.push(c);
            }
            let x = RepMorphism::new(prev.0.clone(), sub.clone(), comps)?;
            let (_, y) = filtra_core::quiverrep::cokernel_quot(&x)?;
            let step = Conflation::new(x, y)?;
            let member = theta.member(level.label - 1);
            let w = is_isomorphic(step.c(), member)?
                .ok_or_else(|| bad(format!("level {} has a quotient not isomorphic to Θ({})", i + 1, level.label)))?;
            steps.push(step);
            labels.push(level.label - 1);
            witnesses.push(w);
            prev = (sub, bases);
        }
        Ok((Filtration::new(&theta, object, steps, labels, witnesses)?, theta))
    }
}

fn write_matrix_entries(out: &mut String, m: &Matrix) {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let _ = write!(out, " {}", m.get(r, c));
        }
    }
}

pub fn serialize(ws: &Workspace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", ws.field.modulus());
    let _ = writeln!(out, "vertices {}", ws.quiver.vertex_count());
    for a in ws.quiver.arrows() {
        let _ = writeln!(out, "arrow {} {} {}", a.name, a.source + 1, a.target + 1);
    }
    for (name, rep) in &ws.reps {
        let _ = writeln!(out, "rep {name}");
        let dims: Vec<String> = rep.dims().iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "dim {}", dims.join(" "));
        for (a, m) in ws.quiver.arrows().iter().zip(rep.maps()) {
            if m.rows() * m.cols() == 0 {
                continue;
            }
            let _ = write!(out, "mat {} {} {}", a.name, m.rows(), m.cols());
            write_matrix_entries(&mut out, m);
            out.push('\n');
        }
    }
    for (name, members) in &ws.thetas {
        let _ = writeln!(out, "theta {name} {}", members.join(" "));
    }
    for f in &ws.filtrations {
        let _ = writeln!(out, "filtration {} {} {}", f.name, f.theta, f.object);
        for level in &f.levels {
            let _ = writeln!(out, "level {}", level.label);
            for (v, e) in &level.spans {
                let entries: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "span {} {}", v + 1, entries.join(" "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const A2: &str = "\
# A2 over F_2
field 2
vertices 2
arrow a 1 2
rep S1
dim 1 0
rep S2
dim 0 1
rep P1
dim 1 1
mat a 1 1 1
theta full S1 S2
";

    #[test]
    fn minimal_workspace_parses() {
        let ws = parse(A2).unwrap();
        assert_eq!(ws.reps.len(), 3);
        assert_eq!(ws.rep("P1").unwrap().dims(), &[1, 1]);
        assert_eq!(ws.theta_names("full").unwrap(), &["S1".to_string(), "S2".to_string()]);
    }

    #[test]
    fn rejects_non_prime_field() {
        let err = parse("field 4\n").unwrap_err();
        assert!(matches!(err, WorkspaceError::Validation { line: 1, .. }), "{err}");
    }

    #[test]
    fn rejects_cycles() {
        let err = parse("field 2\nvertices 2\narrow a 1 2\narrow b 2 1\n").unwrap_err();
        assert_eq!(
            err,
            WorkspaceError::Validation {
                line: 4,
                message: "quiver must be acyclic".into()
            }
        );
    }

    #[test]
    fn shape_mismatch_reports_position() {
        let text = "field 2\nvertices 2\narrow a 1 2\nrep X\ndim 1 1\nmat a 2 1 1 0\n";
        let err = parse(text).unwrap_err();
        assert_eq!(
            err,
            WorkspaceError::Parse {
                line: 6,
                column: 7,
                message: "arrow `a` needs a 1×1 matrix, found 2×1".into()
            }
        );
        let err = parse("field 2\nvertices 2\narrow a 1 2\nrep X\ndim 1 1\nmat a 1 1\n").unwrap_err();
        assert!(matches!(err, WorkspaceError::Parse { line: 6, .. }));
        let err = parse("field 2\nvertices 2\narrow a 1 2\nrep X\ndim 1 1\n").unwrap_err();
        assert!(matches!(err, WorkspaceError::Validation { line: 4, .. }));
    }

    #[test]
    fn bad_tokens_report_columns() {
        assert_eq!(
            parse("field 2\nvertices x\n").unwrap_err(),
            WorkspaceError::Parse {
                line: 2,
                column: 10,
                message: "expected a nonnegative integer, found `x`".into()
            }
        );
        assert!(matches!(parse("frobnicate\n").unwrap_err(), WorkspaceError::Parse { line: 1, column: 1, .. }));
        assert!(matches!(parse(&format!("{A2}rep S1\ndim 1 0\n")).unwrap_err(), WorkspaceError::Validation { .. }));
        assert!(matches!(parse(&format!("{A2}theta bad S1 Q\n")).unwrap_err(), WorkspaceError::Validation { .. }));
    }

    #[test]
    fn round_trip() {
        let text = format!("{A2}filtration F full P1\nlevel 2\nspan 2 1\nlevel 1\n");
        let ws = parse(&text).unwrap();
        let again = parse(&serialize(&ws)).unwrap();
        assert_eq!(ws, again);
    }

    #[test]
    fn filtration_blocks_build() {
        let text = format!("{A2}filtration F full P1\nlevel 2\nspan 2 1\nlevel 1\n");
        let ws = parse(&text).unwrap();
        let (f, theta) = ws.filtration("F").unwrap();
        assert_eq!(f.labels(), &[1, 0]);
        f.validate(&theta).unwrap();
        let bad = format!("{A2}filtration G full P1\nlevel 1\nspan 2 1\nlevel 2\n");
        assert!(parse(&bad).unwrap().filtration("G").is_err());
    }
}
