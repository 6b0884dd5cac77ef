//! The `zclass` command line. [`run`] parses arguments, executes one
//! command and returns the process exit status: 0 on success, 1 when a
//! verification finds a mismatch, 2 on usage errors and exceeded bounds.

mod args;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Map, Value};

pub use args::{Cli, Command, FieldArg, Format, FormsCommand, GroupArg, KindArg, PolyCommand};
use args::{CountArgs, HyperbolicArgs, TableArgs, VerifyArgs};

use crate::error::{Error, Result};
use crate::ff::{FieldSpec, Level};
use crate::group::{
    build_general_linear, build_unitary, element_kind, jordan_decompose, BuildOptions, GroupKind,
    GroupTable, Mat, MatrixFile, Restriction, DEFAULT_GROUP_BOUND,
};
use crate::hermitian::{
    hermitian_diagonalize, hermitian_equivalent, hermitian_validate, HermitianForm,
};
use crate::poly::{
    enumerate_irreducibles, factor, is_self_u_reciprocal, u_reciprocal, IrreducibleFilter, Poly,
};
use crate::series::{z_fq_series, z_real_series, z_series};
use crate::zcount::{
    centralizer_order_gl, centralizer_order_u, compact_unitary_count, count_realizable_restricted,
    count_semisimple, count_unipotent, element_type_gl, element_type_u, enumerate_types_gl,
    enumerate_types_u, hyperbolic_counts, realizable_types_gl, realizable_types_u, total_z_count,
};

/// Environment variable overriding the default enumeration bound.
pub const BOUND_ENV: &str = "ZCLASS_MAX_GROUP";

/// Output of one command, kept in both formats.
struct Report {
    json: Map<String, Value>,
    tsv: Vec<String>,
    ok: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), json!(command));
        Self {
            json,
            tsv: Vec::new(),
            ok: true,
        }
    }

    /// A `key<TAB>value` line and the matching JSON member.
    fn kv(&mut self, key: &str, text: impl ToString, value: Value) {
        self.tsv.push(format!("{key}\t{}", text.to_string()));
        self.json.insert(key.into(), value);
    }

    fn line(&mut self, text: String) {
        self.tsv.push(text);
    }

    fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.into(), value);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.tsv.iter().map(|l| format!("{l}\n")).collect(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&Value::Object(self.json.clone()))
                    .expect("plain JSON values");
                s.push('\n');
                s
            }
        }
    }
}

/// Runs the CLI on `args` (program name first) with the given writers.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if informational {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 2;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(cli.format));
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Table(a) => table(a),
        Command::Count(a) => count(a),
        Command::Verify(a) => verify(a, cli.seed),
        Command::Poly(c) => poly(c),
        Command::Forms(c) => forms(c),
        Command::Hyperbolic(a) => hyperbolic(a),
    }
}

fn group_name(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::GeneralLinear => "gl",
        GroupKind::Unitary => "u",
    }
}

fn restriction_name(r: Restriction) -> &'static str {
    match r {
        Restriction::All => "all",
        Restriction::Semisimple => "semisimple",
        Restriction::Unipotent => "unipotent",
    }
}

fn table(a: &TableArgs) -> Result<Report> {
    if a.max_n == 0 {
        return Err(Error::InvalidArgument("--max-n must be >= 1".into()));
    }
    let order = a.max_n as usize + 1;
    let fields = match a.field {
        Some(f) => vec![f],
        None => vec![FieldArg::C, FieldArg::R, FieldArg::Fq],
    };
    let mut r = Report::new("table");
    r.set("max_n", json!(a.max_n));
    let header: Vec<String> = (1..=a.max_n).map(|n| n.to_string()).collect();
    r.line(format!("field\t{}", header.join("\t")));
    let mut rows = Vec::new();
    for f in fields {
        let (name, series) = match f {
            FieldArg::C => ("c", z_series(order)),
            FieldArg::R => ("r", z_real_series(order)),
            FieldArg::Fq => ("fq", z_fq_series(order)),
        };
        let values: Vec<String> = (1..order).map(|n| series.coeff(n).to_string()).collect();
        r.line(format!("{name}\t{}", values.join("\t")));
        rows.push(json!({ "field": name, "values": values }));
    }
    r.set("rows", Value::Array(rows));
    Ok(r)
}

fn count(a: &CountArgs) -> Result<Report> {
    if a.n == 0 {
        return Err(Error::InvalidArgument("--n must be >= 1".into()));
    }
    let kind: GroupKind = a.group.into();
    let restriction: Restriction = a.kind.into();
    let admits = |semisimple: bool, unipotent: bool| match restriction {
        Restriction::All => true,
        Restriction::Semisimple => semisimple,
        Restriction::Unipotent => unipotent,
    };
    let types: Vec<String> = match kind {
        GroupKind::GeneralLinear => enumerate_types_gl(a.n)
            .iter()
            .filter(|t| admits(t.is_semisimple(), t.is_unipotent()))
            .map(|t| t.to_string())
            .collect(),
        GroupKind::Unitary => enumerate_types_u(a.n)
            .iter()
            .filter(|t| admits(t.is_semisimple(), t.is_unipotent()))
            .map(|t| t.to_string())
            .collect(),
    };
    let closed = match restriction {
        Restriction::All => total_z_count(a.n)?,
        Restriction::Semisimple => count_semisimple(a.n)?,
        Restriction::Unipotent => count_unipotent(a.n)?,
    };

    let mut r = Report::new("count");
    r.kv("group", group_name(kind), json!(group_name(kind)));
    r.kv("n", a.n, json!(a.n));
    r.kv(
        "kind",
        restriction_name(restriction),
        json!(restriction_name(restriction)),
    );
    r.kv("types", types.len(), json!(types.len()));
    r.kv("closed_form", &closed, json!(closed.to_string()));
    r.ok = closed == types.len().into();

    let mut realizable: Option<Vec<String>> = None;
    if let Some(q) = a.q {
        r.kv("q", q, json!(q));
        if a.realizable {
            let spec = FieldSpec::from_q(q)?;
            let list: Vec<String> = match kind {
                GroupKind::GeneralLinear => realizable_types_gl(a.n, &spec)?
                    .iter()
                    .filter(|t| admits(t.is_semisimple(), t.is_unipotent()))
                    .map(|t| t.to_string())
                    .collect(),
                GroupKind::Unitary => realizable_types_u(a.n, &spec)?
                    .iter()
                    .filter(|t| admits(t.is_semisimple(), t.is_unipotent()))
                    .map(|t| t.to_string())
                    .collect(),
            };
            r.kv("realizable", list.len(), json!(list.len()));
            realizable = Some(list);
        }
    }
    if a.list {
        let mut listed = Vec::new();
        for t in &types {
            let realized = realizable.as_ref().map(|l| l.contains(t));
            match realized {
                Some(b) => r.line(format!(
                    "type\t{t}\t{}",
                    if b { "realizable" } else { "unrealizable" }
                )),
                None => r.line(format!("type\t{t}")),
            }
            listed.push(json!({ "type": t, "realizable": realized }));
        }
        r.set("list", Value::Array(listed));
    }
    Ok(r)
}

fn build_options(bound: Option<u64>, seed: u64) -> Result<BuildOptions> {
    let bound = match bound {
        Some(b) => b,
        None => match std::env::var(BOUND_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{BOUND_ENV} must be an integer, got {v:?}"))
            })?,
            Err(_) => DEFAULT_GROUP_BOUND,
        },
    };
    Ok(BuildOptions { bound, seed })
}

fn build_group(
    kind: GroupKind,
    n: usize,
    spec: &FieldSpec,
    opts: BuildOptions,
) -> Result<GroupTable> {
    match kind {
        GroupKind::GeneralLinear => build_general_linear(n, spec, false, opts),
        GroupKind::Unitary => build_unitary(n, spec, &HermitianForm::identity(spec, n)?, opts),
    }
}

/// Type descriptor and predicted centralizer order of a group element.
fn type_of(g: &GroupTable, m: &Mat) -> Result<(String, num_bigint::BigUint)> {
    let spec = g.spec();
    let q = spec.q() as u64;
    Ok(match g.kind() {
        GroupKind::GeneralLinear => {
            let t = element_type_gl(spec, m)?;
            (t.to_string(), centralizer_order_gl(&t, q))
        }
        GroupKind::Unitary => {
            let t = element_type_u(spec, m)?;
            (t.to_string(), centralizer_order_u(&t, q))
        }
    })
}

fn verify(a: &VerifyArgs, seed: u64) -> Result<Report> {
    let opts = build_options(a.bound, seed)?;
    let kind: GroupKind = a.group.into();
    if let Some(path) = &a.element_file {
        return verify_element(a, kind, path, opts);
    }
    let missing =
        |flag: &str| Error::InvalidArgument(format!("{flag} is required without --element-file"));
    let n = a.n.ok_or_else(|| missing("--n"))?;
    let q = a.q.ok_or_else(|| missing("--q"))?;
    let restriction: Restriction = a.kind.into();
    let spec = FieldSpec::from_q(q)?;
    let formula = count_realizable_restricted(n as u32, q, kind, restriction)?;
    let g = build_group(kind, n, &spec, opts)?;
    let zclasses = g.z_classes(restriction);

    let mut r = Report::new("verify");
    r.kv("group", group_name(kind), json!(group_name(kind)));
    r.kv("n", n, json!(n));
    r.kv("q", q, json!(q));
    r.kv(
        "kind",
        restriction_name(restriction),
        json!(restriction_name(restriction)),
    );
    r.kv("order", g.len(), json!(g.len()));

    let mut consistent = true;
    let mut centralizers_match = true;
    let mut seen_types = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    for z in &zclasses {
        let mut types = std::collections::BTreeSet::new();
        let mut predicted = None;
        for &rep in &z.class_reps {
            let (t, c) = type_of(&g, g.element(rep))?;
            types.insert(t);
            predicted = Some(c);
        }
        let predicted = predicted.expect("z-classes are nonempty");
        let t = types.iter().next().cloned().expect("nonempty");
        consistent &= types.len() == 1 && seen_types.insert(t.clone());
        centralizers_match &= predicted == z.centralizer_order.into();
        r.line(format!(
            "zclass\t{t}\t{}\t{}",
            z.class_reps.len(),
            z.centralizer_order
        ));
        rows.push(json!({
            "type": t,
            "classes": z.class_reps.len(),
            "centralizer_order": z.centralizer_order,
        }));
    }
    r.set("z_classes", Value::Array(rows));
    let brute = zclasses.len() as u64;
    r.ok = brute == formula && consistent && centralizers_match;
    r.set("brute", json!(brute));
    r.set("formula", json!(formula));
    r.set("types_consistent", json!(consistent));
    r.set("centralizers_match", json!(centralizers_match));
    r.set("ok", json!(r.ok));
    r.line(format!(
        "types={}",
        if consistent {
            "consistent"
        } else {
            "inconsistent"
        }
    ));
    r.line(format!(
        "centralizers={}",
        if centralizers_match {
            "match"
        } else {
            "mismatch"
        }
    ));
    r.line(format!(
        "brute={brute} formula={formula} {}",
        if r.ok { "OK" } else { "MISMATCH" }
    ));
    Ok(r)
}

fn read_matrix(path: &Path) -> Result<(FieldSpec, Mat)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    MatrixFile::parse(&text)?.into_matrix()
}

fn verify_element(
    a: &VerifyArgs,
    kind: GroupKind,
    path: &Path,
    opts: BuildOptions,
) -> Result<Report> {
    let (spec, m) = read_matrix(path)?;
    if let Some(q) = a.q {
        if q != spec.q() as u64 {
            return Err(Error::InvalidArgument(format!(
                "--q {q} does not match the matrix file's field (q = {})",
                spec.q()
            )));
        }
    }
    if let Some(n) = a.n {
        if n != m.n() {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.n(),
            });
        }
    }
    let g = build_group(kind, m.n(), &spec, opts)?;
    let x = g.index_of(&m).ok_or(Error::NotAMember)?;
    let (t, predicted) = type_of(&g, &m)?;
    let cent = g.centralizer(x);
    let (s, u) = jordan_decompose(&spec, &m)?;
    let cs = g.centralizer(g.index_of(&s).ok_or(Error::NotAMember)?);
    let cu = g.centralizer(g.index_of(&u).ok_or(Error::NotAMember)?);
    let intersection: Vec<usize> = cs
        .iter()
        .copied()
        .filter(|y| cu.binary_search(y).is_ok())
        .collect();
    let kind_name = serde_json::to_value(element_kind(&spec, &m)).expect("enum");

    let mut r = Report::new("verify");
    r.kv("group", group_name(kind), json!(group_name(kind)));
    r.kv("n", m.n(), json!(m.n()));
    r.kv("q", spec.q(), json!(spec.q()));
    r.kv(
        "element",
        m.indices()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" "),
        json!(m.indices()),
    );
    r.kv(
        "element_kind",
        kind_name.as_str().expect("string"),
        kind_name.clone(),
    );
    r.kv("type", &t, json!(t));
    let jordan_ok = intersection == cent;
    r.kv("jordan_intersection", jordan_ok, json!(jordan_ok));
    let brute = cent.len();
    r.ok = predicted == brute.into() && jordan_ok;
    r.set("brute", json!(brute));
    r.set("formula", json!(predicted.to_string()));
    r.set("ok", json!(r.ok));
    r.line(format!(
        "brute={brute} formula={predicted} {}",
        if r.ok { "OK" } else { "MISMATCH" }
    ));
    Ok(r)
}

fn poly(c: &PolyCommand) -> Result<Report> {
    match c {
        PolyCommand::Selfurec { q, degree, list } => {
            let spec = FieldSpec::from_q(*q)?;
            let polys =
                match enumerate_irreducibles(&spec, *degree, IrreducibleFilter::SelfUReciprocal)? {
                    crate::poly::Irreducibles::Single(v) => v,
                    crate::poly::Irreducibles::Pairs(_) => unreachable!("single filter"),
                };
            let mut r = Report::new("poly_selfurec");
            r.kv("q", q, json!(q));
            r.kv("degree", degree, json!(degree));
            r.kv("count", polys.len(), json!(polys.len()));
            if *list {
                let texts: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
                for t in &texts {
                    r.line(format!("poly\t{t}"));
                }
                r.set("polys", json!(texts));
            }
            Ok(r)
        }
        PolyCommand::Tilde { q, input } => {
            let spec = FieldSpec::from_q(*q)?;
            let f = Poly::parse(&spec, input)?;
            let tilde = u_reciprocal(&spec, &f)?;
            let is_self = is_self_u_reciprocal(&spec, &f)?;
            let mut r = Report::new("poly_tilde");
            r.kv("q", q, json!(q));
            r.kv("input", &f, json!(f.to_string()));
            r.kv("tilde", &tilde, json!(tilde.to_string()));
            r.kv("self_u_reciprocal", is_self, json!(is_self));
            Ok(r)
        }
        PolyCommand::Factor { q, input } => {
            let spec = FieldSpec::from_q(*q)?;
            let f = Poly::parse(&spec, input)?;
            if f.degree().unwrap_or(0) == 0 {
                return Err(Error::ConstantPolynomial);
            }
            let factors = factor(&spec, &f, Level::Extension)?;
            let mut r = Report::new("poly_factor");
            r.kv("q", q, json!(q));
            r.kv("input", &f, json!(f.to_string()));
            let mut rows = Vec::new();
            for (p, m) in &factors {
                let class = if p.constant_term().is_zero() {
                    "x"
                } else if is_self_u_reciprocal(&spec, p)? {
                    "self"
                } else {
                    "non_self"
                };
                r.line(format!("factor\t{p}\t{m}\t{class}"));
                rows.push(json!({ "poly": p.to_string(), "multiplicity": m, "class": class }));
            }
            r.set("factors", Value::Array(rows));
            Ok(r)
        }
    }
}

fn matrix_text(m: &Mat) -> String {
    (0..m.n())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e| e.index().to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn matrix_json(m: &Mat) -> Value {
    json!((0..m.n())
        .map(|i| m.row(i).iter().map(|e| e.index()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn forms(c: &FormsCommand) -> Result<Report> {
    match c {
        FormsCommand::Canonicalize { gram } => {
            let (spec, h) = read_matrix(gram)?;
            let form = hermitian_validate(&spec, h)?;
            let (p, d) = hermitian_diagonalize(&spec, &form);
            let mut r = Report::new("forms_canonicalize");
            r.kv("q", spec.q(), json!(spec.q()));
            r.kv("rank", form.rank(), json!(form.rank()));
            r.kv("witness", matrix_text(&p), matrix_json(&p));
            r.kv("canonical", matrix_text(d.gram()), matrix_json(d.gram()));
            r.ok = form.transform(&spec, &p) == *d.gram() && d.gram().is_identity();
            Ok(r)
        }
        FormsCommand::Equivalent { gram } => {
            let (s1, h1) = read_matrix(&gram[0])?;
            let (s2, h2) = read_matrix(&gram[1])?;
            if s1 != s2 {
                return Err(Error::InvalidArgument(
                    "the two Gram matrices are over different fields".into(),
                ));
            }
            let f1 = hermitian_validate(&s1, h1)?;
            let f2 = hermitian_validate(&s2, h2)?;
            let eq = hermitian_equivalent(&f1, &f2);
            let mut r = Report::new("forms_equivalent");
            r.kv("q", s1.q(), json!(s1.q()));
            r.kv("rank1", f1.rank(), json!(f1.rank()));
            r.kv("rank2", f2.rank(), json!(f2.rank()));
            r.kv("equivalent", eq, json!(eq));
            Ok(r)
        }
    }
}

fn hyperbolic(a: &HyperbolicArgs) -> Result<Report> {
    let h = hyperbolic_counts(a.n)?;
    let compact = compact_unitary_count(a.n + 1)?;
    let mut r = Report::new("hyperbolic");
    r.kv("n", a.n, json!(a.n));
    r.kv("elliptic", &h.elliptic, json!(h.elliptic.to_string()));
    r.kv("hyperbolic", &h.hyperbolic, json!(h.hyperbolic.to_string()));
    match &h.parabolic {
        Some(p) => r.kv("parabolic", p, json!(p.to_string())),
        None => r.kv("parabolic", "-", Value::Null),
    }
    r.kv("compact", &compact, json!(compact.to_string()));
    Ok(r)
}
