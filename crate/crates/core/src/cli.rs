//! Batch interface: JSON documents in, compact JSON out.
//!
//! Exit codes are 0 on success, 1 when the computation itself fails and 2 for
//! malformed input, unknown commands and missing parameters. Warnings go to
//! the diagnostic stream only.

use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Number, Value};

use crate::arcs::{dominance_witness, OrbitLabel, OrbitSpace};
use crate::cones::{Cone, FaceRef, Fan};
use crate::ideals::{self, MonomialIdeal, ToricValuation, DEFAULT_DOUBLINGS};
use crate::lattice::linalg;
use crate::lattice::{Extended, LatticeVector, Side};

/// A diagnostic for input that could not be read, naming a field path or a
/// line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Command parameters that may be given in the document instead of on the
/// command line. Flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    pub cone: Option<usize>,
    pub p: Option<BigInt>,
    pub bound: Option<u64>,
    pub precision: Option<u64>,
    pub stratum: Option<Vec<usize>>,
    pub stratum2: Option<Vec<usize>>,
    pub v: Option<Vec<BigInt>>,
    pub v2: Option<Vec<BigInt>>,
}

/// A validated input document. Rays are stored primitive and in input order.
#[derive(Debug, Clone)]
pub struct InputDocument {
    pub dim: usize,
    pub cones: Vec<Cone>,
    pub fan: Fan,
    pub ideal: Option<Vec<Vec<BigInt>>>,
    pub polynomial: Option<Vec<(BigRational, Vec<BigInt>)>>,
    pub params: Params,
}

const TOP_KEYS: [&str; 5] = ["dim", "cones", "ideal", "polynomial", "params"];
const PARAM_KEYS: [&str; 8] = ["cone", "p", "bound", "precision", "stratum", "stratum2", "v", "v2"];

fn syntax(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        ParseError::at(
            format!("line {}, column {}", e.line(), e.column()),
            format!("malformed input: {e}"),
        )
    })
}

fn integer(v: &Value, path: &str) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            if s.contains(['.', 'e', 'E']) {
                return Err(ParseError::at(path, format!("float literal {s} is not accepted")));
            }
            s.parse()
                .map_err(|_| ParseError::at(path, format!("{s} is not an integer")))
        }
        other => Err(ParseError::at(
            path,
            format!("expected an integer, found {}", kind(other)),
        )),
    }
}

fn small(v: &Value, path: &str) -> Result<u64, ParseError> {
    integer(v, path)?
        .to_u64()
        .ok_or_else(|| ParseError::at(path, "expected a non-negative machine-size integer"))
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "a list",
        Value::Object(_) => "an object",
    }
}

fn list<'a>(v: &'a Value, path: &str) -> Result<&'a [Value], ParseError> {
    v.as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| ParseError::at(path, format!("expected a list, found {}", kind(v))))
}

fn vector(v: &Value, path: &str, dim: Option<usize>) -> Result<Vec<BigInt>, ParseError> {
    let xs = list(v, path)?;
    if let Some(d) = dim {
        if xs.len() != d {
            return Err(ParseError::at(
                path,
                format!("expected {d} coordinates, found {}", xs.len()),
            ));
        }
    }
    xs.iter()
        .enumerate()
        .map(|(i, x)| integer(x, &format!("{path}[{i}]")))
        .collect()
}

fn indices(v: &Value, path: &str) -> Result<Vec<usize>, ParseError> {
    list(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| Ok(small(x, &format!("{path}[{i}]"))? as usize))
        .collect()
}

fn rational(v: &Value, path: &str) -> Result<BigRational, ParseError> {
    match v {
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| ParseError::at(path, format!("{s:?} is not an exact rational")))
        }
        other => integer(other, path).map(BigRational::from_integer),
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse().ok()?, BigInt::one()),
    };
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

fn polynomial(v: &Value, path: &str, dim: usize) -> Result<Vec<(BigRational, Vec<BigInt>)>, ParseError> {
    list(v, path)?
        .iter()
        .enumerate()
        .map(|(i, term)| {
            let at = format!("{path}[{i}]");
            match list(term, &at)? {
                [c, u] => Ok((
                    rational(c, &format!("{at}[0]"))?,
                    vector(u, &format!("{at}[1]"), Some(dim))?,
                )),
                _ => Err(ParseError::at(at, "expected [coefficient, exponent]")),
            }
        })
        .collect()
}

fn params(v: &Value) -> Result<Params, ParseError> {
    let obj = v
        .as_object()
        .ok_or_else(|| ParseError::at("params", format!("expected an object, found {}", kind(v))))?;
    let mut out = Params::default();
    for (k, x) in obj {
        let at = format!("params.{k}");
        match k.as_str() {
            "cone" => out.cone = Some(small(x, &at)? as usize),
            "p" => out.p = Some(integer(x, &at)?),
            "bound" => out.bound = Some(small(x, &at)?),
            "precision" => out.precision = Some(small(x, &at)?),
            "stratum" => out.stratum = Some(indices(x, &at)?),
            "stratum2" => out.stratum2 = Some(indices(x, &at)?),
            "v" => out.v = Some(vector(x, &at, None)?),
            "v2" => out.v2 = Some(vector(x, &at, None)?),
            _ => {
                return Err(ParseError::at(
                    at,
                    format!("unknown parameter, expected one of {PARAM_KEYS:?}"),
                ))
            }
        }
    }
    Ok(out)
}

/// Reads and validates a document, returning it with any warnings.
pub fn parse_input(text: &str) -> Result<(InputDocument, Vec<String>), ParseError> {
    let root = syntax(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| ParseError::at("document", format!("expected an object, found {}", kind(&root))))?;
    for k in obj.keys() {
        if !TOP_KEYS.contains(&k.as_str()) {
            return Err(ParseError::at(
                k.clone(),
                format!("unknown field, expected one of {:?}", TOP_KEYS),
            ));
        }
    }
    let dim = small(
        obj.get("dim").ok_or_else(|| ParseError::at("dim", "missing field"))?,
        "dim",
    )? as usize;
    if dim == 0 {
        return Err(ParseError::at("dim", "dimension must be positive"));
    }
    let raw = list(
        obj.get("cones")
            .ok_or_else(|| ParseError::at("cones", "missing field"))?,
        "cones",
    )?;
    if raw.is_empty() {
        return Err(ParseError::at("cones", "at least one cone is required"));
    }
    let mut warnings = Vec::new();
    let mut cones = Vec::with_capacity(raw.len());
    for (i, c) in raw.iter().enumerate() {
        let at = format!("cones[{i}]");
        let mut rays = Vec::new();
        for (j, r) in list(c, &at)?.iter().enumerate() {
            let rat = format!("{at}[{j}]");
            let x = vector(r, &rat, Some(dim))?;
            if x.iter().all(Zero::is_zero) {
                return Err(ParseError::at(rat, "the zero vector is not a ray"));
            }
            let p = linalg::make_primitive(&x);
            if p != x {
                warnings.push(format!(
                    "{rat}: ray {} normalized to {}",
                    compact(&ints(&x)),
                    compact(&ints(&p))
                ));
            }
            rays.push(LatticeVector::new(Side::N, p));
        }
        cones.push(Cone::new(Side::N, dim, rays).map_err(|e| ParseError::at(at, e.to_string()))?);
    }
    let fan = Fan::new(dim, cones.clone()).map_err(|e| ParseError::at("cones", e.to_string()))?;
    let ideal = match obj.get("ideal") {
        None => None,
        Some(v) => Some(
            list(v, "ideal")?
                .iter()
                .enumerate()
                .map(|(i, u)| vector(u, &format!("ideal[{i}]"), Some(dim)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let polynomial = obj
        .get("polynomial")
        .map(|v| self::polynomial(v, "polynomial", dim))
        .transpose()?;
    let params = obj.get("params").map(params).transpose()?.unwrap_or_default();
    Ok((
        InputDocument {
            dim,
            cones,
            fan,
            ideal,
            polynomial,
            params,
        },
        warnings,
    ))
}

/// Reads a polynomial file: either a bare term list or `{"polynomial": [...]}`.
pub fn parse_polynomial(text: &str, dim: usize) -> Result<Vec<(BigRational, Vec<BigInt>)>, ParseError> {
    let root = syntax(text)?;
    match &root {
        Value::Object(o) => match o.get("polynomial") {
            Some(v) if o.len() == 1 => polynomial(v, "polynomial", dim),
            _ => Err(ParseError::at("document", "expected a single \"polynomial\" field")),
        },
        v => polynomial(v, "polynomial", dim),
    }
}

fn int(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers are valid numbers"))
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn vecs<'a>(xs: impl IntoIterator<Item = &'a LatticeVector>) -> Value {
    Value::Array(xs.into_iter().map(|v| ints(v.coords())).collect())
}

fn usizes(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&i| Value::from(i)).collect())
}

fn extended(x: &Extended) -> Value {
    match x {
        Extended::Finite(v) => int(v),
        Extended::Infinite => Value::from("inf"),
    }
}

fn rat(x: &BigRational) -> Value {
    if x.is_integer() {
        int(&x.to_integer())
    } else {
        Value::from(x.to_string())
    }
}

fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

/// The canonical form of a document: compact, fixed key order, primitive
/// rays. Canonical inputs are reproduced byte for byte.
pub fn emit_document(doc: &InputDocument) -> String {
    let mut pairs = vec![
        ("dim", Value::from(doc.dim)),
        (
            "cones",
            Value::Array(doc.cones.iter().map(|c| vecs(c.rays())).collect()),
        ),
    ];
    if let Some(ideal) = &doc.ideal {
        pairs.push(("ideal", Value::Array(ideal.iter().map(|u| ints(u)).collect())));
    }
    if let Some(poly) = &doc.polynomial {
        let terms = poly.iter().map(|(c, u)| Value::Array(vec![rat(c), ints(u)])).collect();
        pairs.push(("polynomial", Value::Array(terms)));
    }
    let p = &doc.params;
    let mut ps: Vec<(&str, Value)> = Vec::new();
    if let Some(x) = p.cone {
        ps.push(("cone", Value::from(x)));
    }
    if let Some(x) = &p.p {
        ps.push(("p", int(x)));
    }
    if let Some(x) = p.bound {
        ps.push(("bound", Value::from(x)));
    }
    if let Some(x) = p.precision {
        ps.push(("precision", Value::from(x)));
    }
    if let Some(x) = &p.stratum {
        ps.push(("stratum", usizes(x)));
    }
    if let Some(x) = &p.stratum2 {
        ps.push(("stratum2", usizes(x)));
    }
    if let Some(x) = &p.v {
        ps.push(("v", ints(x)));
    }
    if let Some(x) = &p.v2 {
        ps.push(("v2", ints(x)));
    }
    if !ps.is_empty() {
        pairs.push(("params", object(ps)));
    }
    compact(&object(pairs))
}

#[derive(Debug, Parser)]
#[command(
    name = "toric-arcs",
    version,
    about = "Arc-space orbits and contact loci of toric varieties"
)]
pub struct Cli {
    /// Index of the cone, in input order, that chart-level commands act on.
    #[arg(long, global = true, value_name = "K")]
    pub cone: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Source {
    /// Input document; standard input when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Rays and lineality space of the dual cone.
    Dual(Source),
    /// All faces with their dimensions and rays.
    Faces(Source),
    /// Smoothness of the cone and its non-smooth faces.
    Smooth(Source),
    /// Hilbert bases of the cone and of its dual.
    Hilbert(Source),
    /// Orbit labels with coordinates bounded by B and their Hasse diagram.
    Orbits {
        /// Largest absolute coordinate listed.
        #[arg(long, value_name = "B")]
        bound: Option<u64>,
        #[command(flatten)]
        source: Source,
    },
    /// Whether the first orbit's closure contains the second.
    Dominates {
        /// Ray indices of the first stratum, e.g. `[0,1]`; `0` is the zero face.
        #[arg(long, value_name = "S", allow_hyphen_values = true)]
        stratum: Option<String>,
        /// Point of the first orbit in the quotient lattice, e.g. `[1,1]`.
        #[arg(long, value_name = "V", allow_hyphen_values = true)]
        v: Option<String>,
        /// Second stratum; defaults to the first.
        #[arg(long, value_name = "S2", allow_hyphen_values = true)]
        stratum2: Option<String>,
        /// Point of the second orbit.
        #[arg(long, value_name = "V2", allow_hyphen_values = true)]
        v2: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// An explicit one-parameter family realizing a dominance.
    Witness {
        /// Ray indices of the first stratum, e.g. `[0,1]`; `0` is the zero face.
        #[arg(long, value_name = "S", allow_hyphen_values = true)]
        stratum: Option<String>,
        /// Point of the first orbit in the quotient lattice, e.g. `[1,1]`.
        #[arg(long, value_name = "V", allow_hyphen_values = true)]
        v: Option<String>,
        /// Second stratum; defaults to the first.
        #[arg(long, value_name = "S2", allow_hyphen_values = true)]
        stratum2: Option<String>,
        /// Point of the second orbit.
        #[arg(long, value_name = "V2", allow_hyphen_values = true)]
        v2: Option<String>,
        /// Largest t-degree kept; defaults to twice the largest order plus one.
        #[arg(long, value_name = "P")]
        precision: Option<u64>,
        #[command(flatten)]
        source: Source,
    },
    /// Components of the contact locus of the ideal at level P.
    Contact {
        /// Level of the order function.
        #[arg(long, value_name = "P", allow_hyphen_values = true)]
        p: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// Components of the arcs through the singular locus.
    Sing(Source),
    /// Newton polyhedron vertices of the ideal and its dual fan.
    Newton(Source),
    /// The scaled polar polyhedron and the lattice points on its compact faces.
    Polar {
        /// Level of the order function.
        #[arg(long, value_name = "P", allow_hyphen_values = true)]
        p: Option<String>,
        #[command(flatten)]
        source: Source,
    },
    /// The toric valuation at V of a polynomial.
    Valuation {
        /// A point of the selected cone.
        #[arg(long, value_name = "V", allow_hyphen_values = true)]
        v: Option<String>,
        /// Polynomial file; defaults to the document's `polynomial` field.
        #[arg(long, value_name = "FILE")]
        poly: Option<PathBuf>,
        #[command(flatten)]
        source: Source,
    },
    /// The document in canonical form.
    Normalize(Source),
}

impl Command {
    fn source(&self) -> &Source {
        match self {
            Command::Dual(s)
            | Command::Faces(s)
            | Command::Smooth(s)
            | Command::Hilbert(s)
            | Command::Sing(s)
            | Command::Newton(s)
            | Command::Normalize(s) => s,
            Command::Orbits { source, .. }
            | Command::Dominates { source, .. }
            | Command::Witness { source, .. }
            | Command::Contact { source, .. }
            | Command::Polar { source, .. }
            | Command::Valuation { source, .. } => source,
        }
    }
}

/// Why a command did not produce output.
#[derive(Debug)]
pub enum CliError {
    /// Bad input or usage: exit code 2.
    Usage(String),
    /// The computation rejected valid input: exit code 1.
    Domain(crate::Error),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

fn missing(name: &str) -> CliError {
    CliError::Usage(format!("missing parameter {name}"))
}

fn flag_vector(s: &str, name: &str) -> Result<Vec<BigInt>, CliError> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|x| {
            let x = x.trim();
            if x.contains(['.', 'e', 'E']) {
                return Err(CliError::Usage(format!("--{name}: float literal {x} is not accepted")));
            }
            x.parse()
                .map_err(|_| CliError::Usage(format!("--{name}: {x:?} is not an integer")))
        })
        .collect()
}

/// `0` is the zero face; otherwise a list of ray indices, brackets optional.
fn flag_stratum(s: &str, name: &str) -> Result<Vec<usize>, CliError> {
    if s.trim() == "0" {
        return Ok(Vec::new());
    }
    flag_vector(s, name)?
        .iter()
        .map(|x| {
            x.to_usize()
                .ok_or_else(|| CliError::Usage(format!("--{name}: {x} is not a ray index")))
        })
        .collect()
}

struct Context<'a> {
    doc: &'a InputDocument,
    cone: usize,
}

impl<'a> Context<'a> {
    fn chart(&self) -> &'a Cone {
        &self.doc.cones[self.cone]
    }

    fn ideal(&self) -> Result<(MonomialIdeal, Vec<LatticeVector>), CliError> {
        let gens = self.doc.ideal.as_ref().ok_or_else(|| missing("ideal"))?;
        let gens: Vec<LatticeVector> = gens.iter().map(|u| LatticeVector::new(Side::M, u.clone())).collect();
        Ok(MonomialIdeal::new(self.chart(), &gens)?)
    }

    /// A stratum given by local ray indices on the selected cone, as a face
    /// of the fan.
    fn stratum(&self, local: &[usize], name: &str) -> Result<FaceRef, CliError> {
        let rays = self.chart().rays();
        let mut global = Vec::with_capacity(local.len());
        for &i in local {
            let r = rays
                .get(i)
                .ok_or_else(|| CliError::Usage(format!("{name}: cone {} has no ray {i}", self.cone)))?;
            let g = self
                .doc
                .fan
                .rays()
                .iter()
                .position(|x| x == r)
                .expect("input rays are fan rays");
            global.push(g);
        }
        Ok(FaceRef::new(global))
    }

    fn label(&self, stratum: &[usize], v: Vec<BigInt>, name: &str) -> Result<OrbitLabel, CliError> {
        Ok(OrbitLabel::new(
            self.stratum(stratum, name)?,
            LatticeVector::new(Side::N, v),
        ))
    }
}

fn pick<T: Clone>(flag: Option<T>, doc: &Option<T>) -> Option<T> {
    flag.or_else(|| doc.clone())
}

fn components<'a>(xs: impl Iterator<Item = (&'a LatticeVector, &'a BigInt, &'a LatticeVector)>) -> Value {
    let items = xs
        .map(|(v, e, v0)| object(vec![("v", ints(v.coords())), ("e", int(e)), ("v0", ints(v0.coords()))]))
        .collect();
    object(vec![("components", Value::Array(items))])
}

fn level(flag: Option<String>, doc: &InputDocument) -> Result<BigInt, CliError> {
    match flag {
        Some(s) => {
            let v = flag_vector(&s, "p")?;
            match v.as_slice() {
                [p] => Ok(p.clone()),
                _ => Err(CliError::Usage(format!("--p: {s:?} is not an integer"))),
            }
        }
        None => doc.params.p.clone().ok_or_else(|| missing("p")),
    }
}

/// Runs one command on a parsed document. `poly_text` is the contents of the
/// `--poly` file when one was given.
pub fn run_command(
    doc: &InputDocument,
    cli_cone: Option<usize>,
    cmd: &Command,
    poly_text: Option<&str>,
) -> Result<Value, CliError> {
    let cone = cli_cone.or(doc.params.cone).unwrap_or(0);
    if cone >= doc.cones.len() {
        return Err(CliError::Usage(format!(
            "--cone: no cone {cone}, the document has {}",
            doc.cones.len()
        )));
    }
    let ctx = Context { doc, cone };
    let chart = ctx.chart();
    let p = &doc.params;
    Ok(match cmd.clone() {
        Command::Dual(_) => object(vec![
            ("rays", vecs(chart.dual_rays())),
            ("lineality", vecs(chart.dual_lineality())),
        ]),
        Command::Faces(_) => {
            let mut faces = Vec::new();
            for f in chart.faces() {
                let fc = chart.face_cone(&f)?;
                faces.push(object(vec![
                    ("rays", usizes(f.rays())),
                    ("dim", Value::from(fc.dim())),
                    ("generators", vecs(fc.rays())),
                ]));
            }
            object(vec![("faces", Value::Array(faces))])
        }
        Command::Smooth(_) => {
            let singular = ideals::singular_faces(chart)?;
            object(vec![
                ("smooth", Value::from(chart.is_smooth())),
                (
                    "singular_faces",
                    Value::Array(singular.iter().map(|f| usizes(f.rays())).collect()),
                ),
            ])
        }
        Command::Hilbert(_) => {
            let dual = if chart.is_full_dimensional() {
                vecs(&chart.hilbert_basis_dual()?)
            } else {
                Value::Null
            };
            object(vec![("cone", vecs(&chart.hilbert_basis()?)), ("dual", dual)])
        }
        Command::Orbits { bound, .. } => {
            let bound = pick(bound, &p.bound).ok_or_else(|| missing("bound"))?;
            let poset = OrbitSpace::new(&doc.fan)?.poset(bound);
            let nodes = poset
                .nodes
                .iter()
                .map(|o| {
                    object(vec![
                        ("stratum", usizes(o.stratum().rays())),
                        ("v", ints(o.point().coords())),
                    ])
                })
                .collect();
            let edges = poset
                .edges
                .iter()
                .map(|&(i, j)| Value::Array(vec![Value::from(i), Value::from(j)]))
                .collect();
            object(vec![
                ("rays", vecs(doc.fan.rays())),
                ("nodes", Value::Array(nodes)),
                ("edges", Value::Array(edges)),
            ])
        }
        Command::Dominates {
            stratum,
            v,
            stratum2,
            v2,
            ..
        }
        | Command::Witness {
            stratum,
            v,
            stratum2,
            v2,
            ..
        } => {
            let s1 = match stratum {
                Some(s) => flag_stratum(&s, "stratum")?,
                None => p.stratum.clone().unwrap_or_default(),
            };
            let s2 = match stratum2 {
                Some(s) => flag_stratum(&s, "stratum2")?,
                None => p.stratum2.clone().unwrap_or_else(|| s1.clone()),
            };
            let v1 = match v {
                Some(s) => flag_vector(&s, "v")?,
                None => p.v.clone().ok_or_else(|| missing("v"))?,
            };
            let v2 = match v2 {
                Some(s) => flag_vector(&s, "v2")?,
                None => p.v2.clone().ok_or_else(|| missing("v2"))?,
            };
            let o1 = ctx.label(&s1, v1, "stratum")?;
            let o2 = ctx.label(&s2, v2, "stratum2")?;
            if let Command::Witness { precision, .. } = cmd {
                witness(doc, &o1, &o2, pick(*precision, &p.precision))?
            } else {
                let dom = OrbitSpace::new(&doc.fan)?.dominates(&o1, &o2)?;
                object(vec![("dominates", Value::from(dom))])
            }
        }
        Command::Contact { p: flag, .. } => {
            let level = level(flag, doc)?;
            let (a, _) = ctx.ideal()?;
            let cs = ideals::contact_components(&a, &level, DEFAULT_DOUBLINGS)?;
            components(cs.iter().map(|c| (&c.point, &c.e, &c.v0)))
        }
        Command::Sing(_) => {
            let cs = ideals::sing_components(chart)?;
            components(cs.iter().map(|c| (&c.point, &c.e, &c.v0)))
        }
        Command::Newton(_) => {
            let (a, dropped) = ctx.ideal()?;
            let np = ideals::newton_polytope(&a)?;
            let fan = ideals::dual_fan(&a)?;
            object(vec![
                ("generators", vecs(a.generators())),
                ("dropped", vecs(&dropped)),
                ("vertices", vecs(&np.vertices)),
                ("redundant", vecs(&np.redundant)),
                ("dual_fan", Value::Array(fan.iter().map(|c| vecs(c.rays())).collect())),
            ])
        }
        Command::Polar { p: flag, .. } => {
            let level = level(flag, doc)?;
            if !level.is_positive() {
                return Err(crate::Error::NonPositiveLevel.into());
            }
            let (a, _) = ctx.ideal()?;
            let polar = ideals::polar_polytope(&a, &level)?;
            let points = ideals::compact_face_points(&a, &level)?;
            let vertices = polar
                .vertices
                .iter()
                .map(|v| Value::Array(v.iter().map(|x| Value::from(x.to_string())).collect()))
                .collect();
            object(vec![
                ("level", int(&level)),
                ("vertices", Value::Array(vertices)),
                (
                    "compact_faces",
                    Value::Array(polar.compact_faces.iter().map(|f| usizes(f)).collect()),
                ),
                ("integral_level", int(&polar.integral_level())),
                ("points", vecs(&points)),
            ])
        }
        Command::Valuation { v, .. } => {
            let v = match v {
                Some(s) => flag_vector(&s, "v")?,
                None => p.v.clone().ok_or_else(|| missing("v"))?,
            };
            if v.len() != doc.dim {
                return Err(CliError::Usage(format!(
                    "--v: expected {} coordinates, found {}",
                    doc.dim,
                    v.len()
                )));
            }
            let poly = match poly_text {
                Some(text) => parse_polynomial(text, doc.dim)?,
                None => doc.polynomial.clone().ok_or_else(|| missing("polynomial"))?,
            };
            let poly: Vec<(BigRational, LatticeVector)> = poly
                .into_iter()
                .map(|(c, u)| (c, LatticeVector::new(Side::M, u)))
                .collect();
            let val = ToricValuation::new(chart, &LatticeVector::new(Side::N, v))?;
            let value = val.eval(&poly)?;
            object(vec![
                ("v", ints(val.point().coords())),
                ("e", int(val.multiplicity())),
                ("v0", ints(val.primitive().coords())),
                ("value", int(&value)),
            ])
        }
        Command::Normalize(_) => syntax(&emit_document(doc)).expect("canonical form parses"),
    })
}

fn witness(doc: &InputDocument, o1: &OrbitLabel, o2: &OrbitLabel, precision: Option<u64>) -> Result<Value, CliError> {
    let w = dominance_witness(&doc.fan, o1, o2, precision)?;
    let chart = &doc.fan.charts()[w.chart];
    let input_index = doc
        .cones
        .iter()
        .position(|c| c == chart)
        .expect("charts come from the input");
    let series =
        |xs: &[crate::arcs::TruncatedSeries]| Value::Array(xs.iter().map(|s| Value::from(s.to_string())).collect());
    let orders = |xs: &[Extended]| Value::Array(xs.iter().map(extended).collect());
    let r = &w.report;
    Ok(object(vec![
        ("cone", Value::from(input_index)),
        ("precision", Value::from(r.precision)),
        ("basis", vecs(&w.basis)),
        ("basis_images", series(&w.basis_images)),
        ("generators", vecs(&w.generators)),
        ("generator_images", series(&w.generator_images)),
        ("generic_orders", orders(&r.generic_orders)),
        ("special_orders", orders(&r.special_orders)),
        ("expected_generic", orders(&r.expected_generic)),
        ("expected_special", orders(&r.expected_special)),
        ("verified", Value::from(r.verified())),
    ]))
}

fn read_source(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Usage(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

/// Parses arguments, runs the command and writes the result. Returns the
/// process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, stdin, stderr) {
        Ok(v) => {
            let _ = writeln!(stdout, "{}", compact(&v));
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, stderr: &mut dyn Write) -> Result<Value, CliError> {
    let text = read_source(cli.command.source().input.as_ref(), stdin)?;
    let (doc, warnings) = parse_input(&text)?;
    for w in warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let poly_text = match &cli.command {
        Command::Valuation { poly: Some(path), .. } => {
            Some(std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?)
        }
        _ => None,
    };
    run_command(&doc, cli.cone, &cli.command, poly_text.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("toric-arcs").chain(args.iter().copied()),
            &mut input.as_bytes(),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    const A1: &str = r#"{"dim":2,"cones":[[[1,0],[1,2]]]}"#;

    #[test]
    fn minimal_document_parses() {
        let (doc, warnings) = parse_input(A1).unwrap();
        assert_eq!(doc.dim, 2);
        assert!(warnings.is_empty());
        assert_eq!(emit_document(&doc), A1);
    }

    #[test]
    fn non_primitive_rays_are_normalized() {
        let (doc, warnings) = parse_input(r#"{"dim":2,"cones":[[[1,0],[2,4]]]}"#).unwrap();
        assert_eq!(doc.cones[0].rays()[1], LatticeVector::n([1, 2]));
        assert_eq!(warnings, vec!["cones[0][1]: ray [2,4] normalized to [1,2]".to_string()]);
    }

    #[test]
    fn lines_are_rejected() {
        let e = parse_input(r#"{"dim":2,"cones":[[[1,0],[-1,0]]]}"#).unwrap_err();
        assert_eq!(e.location, "cones[0]");
        assert!(e.message.contains("strongly convex"));
    }

    #[test]
    fn floats_are_rejected_with_a_path() {
        let e = parse_input(r#"{"dim":2,"cones":[[[1,0],[1.0,2]]]}"#).unwrap_err();
        assert_eq!(e.location, "cones[0][1][0]");
        let e = parse_input("{\"dim\":2,\n\"cones\":[[[1,0]]").unwrap_err();
        assert!(e.location.starts_with("line 2"));
        let e = parse_input(r#"{"dim":2,"cones":[[[1,0,0]]]}"#).unwrap_err();
        assert_eq!(e.location, "cones[0][0]");
    }

    #[test]
    fn spec_commands() {
        assert_eq!(
            go(&["sing"], A1).1,
            "{\"components\":[{\"v\":[1,1],\"e\":1,\"v0\":[1,1]}]}\n"
        );
        let q = r#"{"dim":2,"cones":[[[1,0],[0,1]]],"ideal":[[2,0],[0,3]]}"#;
        assert_eq!(
            go(&["contact", "--p", "6"], q).1,
            "{\"components\":[{\"v\":[3,2],\"e\":1,\"v0\":[3,2]}]}\n"
        );
        assert_eq!(
            go(&["dominates", "--stratum", "0", "--v", "1,1", "--v2", "[2,1]"], A1).1,
            "{\"dominates\":true}\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["sing"], "{").0, 2);
        assert_eq!(go(&["frobnicate"], A1).0, 2);
        assert_eq!(go(&["contact"], A1).0, 2);
        let (code, _, err) = go(&["dominates", "--v", "2,1", "--v2", "1,1"], A1);
        assert_eq!(code, 0, "{err}");
        // the A1 chart is singular, so no witness can be built
        assert_eq!(go(&["witness", "--v", "1,1", "--v2", "2,1"], A1).0, 1);
    }
}
