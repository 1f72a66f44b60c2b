use std::fs;
use std::path::{Path, PathBuf};

use extform::bounds::{xc_bounds, CoverOutcome, SUPPORT_LIMIT};
use extform::constructions::{
    balas_union, batcher_network, birkhoff_extension, bubble_network, colorful_matching_extension,
    knapsack_flow_extension, martin_spanning_tree_extension, sorting_network_extension,
    verify_extension, Target, FAMILY_SEED,
};
use extform::kernel::hull;
use extform::slack::{extension_to_factorization, slack_matrix, verify_factorization};
use extform::{zoo, Extension, HPoly, VPoly};
use serde_json::{json, Value};

use crate::args::{Cli, Command, ConstructArgs, Family, Kind, Network, ZooArgs};
use crate::format::{self, ParseError, PolyFile};
use crate::report;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotVerified,
    Input,
    Budget,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::NotVerified => 1,
            Status::Input => 2,
            Status::Budget => 3,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{}: {}", .source.line, .source.message)]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] extform::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(extform::Error::Budget(_)) => Status::Budget,
            _ => Status::Input,
        }
    }
}

type Res<T> = Result<T, CliError>;

/// What a command prints and how it exits.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub status: Status,
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })
}

fn write(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Res<T> {
    r.map_err(|source| CliError::Parse {
        path: display(path),
        source,
    })
}

fn load_hpoly(path: &Path) -> Res<HPoly> {
    parsed(path, format::parse_hpoly(&read(path)?))
}

fn load_vpoly(path: &Path) -> Res<VPoly> {
    parsed(path, format::parse_vpoly(&read(path)?))
}

fn load_ext(path: &Path) -> Res<Extension> {
    parsed(path, format::parse_ext(&read(path)?))
}

fn load_poly(path: &Path) -> Res<PolyFile> {
    parsed(path, format::parse_poly(&read(path)?))
}

fn need<T>(v: Option<T>, what: &str) -> Res<T> {
    v.ok_or_else(|| CliError::Usage(format!("missing {what}")))
}

fn path_value(p: &Option<PathBuf>) -> Value {
    p.as_deref().map_or(Value::Null, |p| Value::String(display(p)))
}

pub fn run(cli: &Cli) -> Res<Output> {
    let (command, inputs, results, summary, status, seed) = match &cli.command {
        Command::Zoo(a) => zoo_cmd(a)?,
        Command::Construct(a) => construct_cmd(a)?,
        Command::Verify { target, ext, vrep } => verify_cmd(target, ext, vrep)?,
        Command::Bounds { hpoly, vpoly, exts, budget } => bounds_cmd(hpoly, vpoly, exts, *budget)?,
        Command::Slack { hpoly, vpoly, output } => slack_cmd(hpoly, vpoly, output)?,
        Command::Factorize { ext, hpoly, vpoly, t, s } => factorize_cmd(ext, hpoly, vpoly, t, s)?,
    };
    let stdout = if cli.json {
        report::document(command, inputs, results, seed)
    } else {
        summary
    };
    Ok(Output { stdout, status })
}

type Done = (&'static str, Value, Value, String, Status, Option<u64>);

fn zoo_cmd(a: &ZooArgs) -> Res<Done> {
    let n = || need(a.n, "size parameter n");
    let knap = || -> Res<VPoly> {
        let cap = need(a.cap, "capacity --W")?;
        Ok(zoo::knapsack_vrep(&a.w, cap)?)
    };
    let gen_v = || -> Res<VPoly> {
        Ok(match a.family {
            Family::Matching => zoo::matching_vrep(n()?, a.size)?,
            Family::Permutahedron => zoo::permutahedron_vrep(n()?)?,
            Family::Birkhoff => zoo::birkhoff_vrep(n()?)?,
            Family::SpanningTree => zoo::spanning_tree_vrep(n()?)?,
            Family::Knapsack => knap()?,
            Family::Cube => zoo::cube_vrep(n()?)?,
            Family::Cross => zoo::cross_polytope_vrep(n()?)?,
            Family::Simplex => zoo::simplex_vrep(n()?)?,
        })
    };
    let gen_h = || -> Res<HPoly> {
        Ok(match a.family {
            Family::Matching if a.size.is_none() => zoo::matching_hrep(n()?)?,
            Family::Matching | Family::Knapsack => hull(&gen_v()?)?,
            Family::Permutahedron => zoo::permutahedron_hrep(n()?)?,
            Family::Birkhoff => zoo::birkhoff_hrep(n()?)?,
            Family::SpanningTree => zoo::spanning_tree_hrep(n()?)?,
            Family::Cube => zoo::cube_hrep(n()?)?,
            Family::Cross => zoo::cross_polytope_hrep(n()?)?,
            Family::Simplex => zoo::simplex_hrep(n()?)?,
        })
    };
    let family = format!("{:?}", a.family).to_lowercase();
    let mut summary = String::new();
    let mut h_info = Value::Null;
    let mut v_info = Value::Null;
    if a.hrep.is_some() || a.vrep.is_none() {
        let h = gen_h()?;
        h_info = json!({
            "dim": h.dim,
            "inequalities": h.ineqs.len(),
            "equations": h.eqs.len(),
            "file": path_value(&a.hrep),
        });
        match &a.hrep {
            Some(p) => {
                write(p, &format::write_hpoly(&h))?;
                summary += &format!(
                    "wrote {}: dimension {}, {} inequalities, {} equations\n",
                    display(p),
                    h.dim,
                    h.ineqs.len(),
                    h.eqs.len()
                );
            }
            None => summary += &format::write_hpoly(&h),
        }
    }
    if let Some(p) = &a.vrep {
        let v = gen_v()?;
        v_info = json!({ "dim": v.dim, "points": v.len(), "file": display(p) });
        write(p, &format::write_vpoly(&v))?;
        summary += &format!("wrote {}: dimension {}, {} points\n", display(p), v.dim, v.len());
    }
    let inputs = json!({
        "family": family,
        "n": a.n,
        "size": a.size,
        "w": a.w,
        "W": a.cap,
    });
    let results = json!({ "hrep": h_info, "vrep": v_info });
    Ok(("zoo", inputs, results, summary, Status::Ok, None))
}

fn construct_cmd(a: &ConstructArgs) -> Res<Done> {
    let n = || need(a.n, "size parameter n");
    let mut extra = json!({});
    let mut seed = None;
    let ext = match a.kind {
        Kind::Birkhoff => birkhoff_extension(n()?)?,
        Kind::Martin => martin_spanning_tree_extension(n()?)?,
        Kind::Knapsack => knapsack_flow_extension(&a.w, need(a.cap, "capacity --W")?)?,
        Kind::Sortnet => {
            let n = n()?;
            let net = match a.network {
                Network::Bubble => bubble_network(n)?,
                Network::Batcher => batcher_network(n)?,
            };
            extra = json!({ "comparators": net.len() });
            sorting_network_extension(n, &net)?
        }
        Kind::Colorful => {
            let (ext, family) = colorful_matching_extension(n()?, need(a.k, "matching size --k")?)?;
            extra = json!({
                "colorings": family.len(),
                "subsets_checked": family.subsets_checked,
                "certified": family.certify(),
            });
            seed = Some(FAMILY_SEED);
            ext
        }
        Kind::Balas => {
            if a.parts.is_empty() {
                return Err(CliError::Usage("balas needs at least one --part".into()));
            }
            let parts = a
                .parts
                .iter()
                .map(|p| match load_poly(p)? {
                    PolyFile::H(h) => Ok(h),
                    PolyFile::V(v) => Ok(hull(&v)?),
                })
                .collect::<Res<Vec<_>>>()?;
            balas_union(&parts)?
        }
    };
    let text = format::write_ext(&ext);
    let mut summary = format!(
        "{}: size {}, dimension {} -> {}\n",
        ext.name,
        ext.size(),
        ext.dim(),
        ext.target_dim()
    );
    match &a.output {
        Some(p) => {
            write(p, &text)?;
            summary += &format!("wrote {}\n", display(p));
        }
        None => summary = text,
    }
    let inputs = json!({
        "kind": format!("{:?}", a.kind).to_lowercase(),
        "n": a.n,
        "k": a.k,
        "w": a.w,
        "W": a.cap,
        "network": format!("{:?}", a.network).to_lowercase(),
        "parts": a.parts.iter().map(|p| display(p)).collect::<Vec<_>>(),
    });
    let results = json!({
        "name": ext.name,
        "size": ext.size(),
        "dim": ext.dim(),
        "target_dim": ext.target_dim(),
        "equations": ext.q.eqs.len(),
        "file": path_value(&a.output),
        "details": extra,
    });
    Ok(("construct", inputs, results, summary, Status::Ok, seed))
}

fn verify_cmd(target: &Path, ext: &Path, vrep: &Option<PathBuf>) -> Res<Done> {
    let t = match (load_poly(target)?, vrep) {
        (PolyFile::H(h), Some(v)) => Target::new(h, load_vpoly(v)?)?,
        (PolyFile::H(h), None) => Target::from_hrep(h)?,
        (PolyFile::V(v), None) => Target::from_vrep(v)?,
        (PolyFile::V(_), Some(_)) => {
            return Err(CliError::Usage("--vrep only pairs with an .hpoly target".into()));
        }
    };
    let e = load_ext(ext)?;
    let r = verify_extension(&t, &e)?;
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let mut summary = format!(
        "{verdict} {}: size {}; {} vertices, {} inequalities, {} equations checked\n",
        r.name, r.size, r.vertices_checked, r.inequalities_checked, r.equations_checked
    );
    for f in &r.failures {
        summary += &format!("  {}\n", report::failure(f));
    }
    let inputs = json!({ "target": display(target), "ext": display(ext), "vrep": path_value(vrep) });
    let status = if r.passed() { Status::Ok } else { Status::NotVerified };
    Ok(("verify", inputs, report::verify(&r), summary, status, None))
}

fn bounds_cmd(hpoly: &Path, vpoly: &Path, exts: &[PathBuf], budget: usize) -> Res<Done> {
    let t = Target::new(load_hpoly(hpoly)?, load_vpoly(vpoly)?)?;
    let known = exts.iter().map(|p| load_ext(p)).collect::<Res<Vec<_>>>()?;
    let r = xc_bounds(&t, &known, budget)?;
    let support = slack_matrix(&t.hrep, &t.vrep)?.support_size();
    let out_of_budget = matches!(r.cover, CoverOutcome::ExceedsBudget { .. })
        || (!r.fooling.exact && support <= SUPPORT_LIMIT);
    let cover = match &r.cover {
        CoverOutcome::Found(c) if c.is_exact() => format!("{} (exact)", c.len()),
        CoverOutcome::Found(c) => format!("at most {} (greedy)", c.len()),
        CoverOutcome::ExceedsBudget { best, .. } => format!("at most {} (budget exceeded)", best.len()),
    };
    let faces = match (r.faces, r.log_faces) {
        (Some(f), Some(l)) => format!("{f} faces, log bound {l}"),
        _ => "face lattice skipped".to_string(),
    };
    let mut summary = format!(
        "lower {} ({}), upper {} ({})\nrank {}; {faces}; rectangle cover {cover}; fooling set {} ({})\n",
        r.lower,
        r.lower_sources.join(", "),
        r.upper,
        r.upper_sources.join(", "),
        r.rank,
        r.fooling.len(),
        if r.fooling.exact { "exact" } else { "not proven maximal" },
    );
    for k in &r.known {
        let v = if k.verified { "verified" } else { "not verified, ignored" };
        summary += &format!("known {}: size {} ({v})\n", k.name, k.size);
    }
    let inputs = json!({
        "hpoly": display(hpoly),
        "vpoly": display(vpoly),
        "ext": exts.iter().map(|p| display(p)).collect::<Vec<_>>(),
        "budget": budget,
    });
    let status = if out_of_budget { Status::Budget } else { Status::Ok };
    Ok(("bounds", inputs, report::bounds(&r), summary, status, None))
}

fn slack_cmd(hpoly: &Path, vpoly: &Path, output: &Option<PathBuf>) -> Res<Done> {
    let s = slack_matrix(&load_hpoly(hpoly)?, &load_vpoly(vpoly)?)?;
    let text = format::write_matrix(&s.entries, &s.row_labels, &s.col_labels);
    let zeros = s.rows() * s.cols() - s.support_size();
    let summary = match output {
        Some(p) => {
            write(p, &text)?;
            format!("{}x{} slack matrix, {zeros} zeros\nwrote {}\n", s.rows(), s.cols(), display(p))
        }
        None => text,
    };
    let inputs = json!({ "hpoly": display(hpoly), "vpoly": display(vpoly), "output": path_value(output) });
    let results = json!({
        "rows": s.rows(),
        "cols": s.cols(),
        "zeros": zeros,
        "row_labels": s.row_labels,
        "col_labels": s.col_labels,
        "entries": report::matrix(&s.entries),
        "affine_equations": s.affine_space.len(),
    });
    Ok(("slack", inputs, results, summary, Status::Ok, None))
}

fn factorize_cmd(
    ext: &Path,
    hpoly: &Path,
    vpoly: &Path,
    t_out: &Option<PathBuf>,
    s_out: &Option<PathBuf>,
) -> Res<Done> {
    let (h, v, e) = (load_hpoly(hpoly)?, load_vpoly(vpoly)?, load_ext(ext)?);
    let f = extension_to_factorization(&e, &h, &v)?;
    let slack = slack_matrix(&h, &v)?;
    let valid = verify_factorization(&slack, &f).is_valid();
    let inner: Vec<String> = (0..f.inner_dim()).map(|k| format!("q{}", k + 1)).collect();
    let t_text = format::write_matrix(&f.t, &slack.row_labels, &inner);
    let s_text = format::write_matrix(&f.s, &inner, &slack.col_labels);
    let shape = |m: &extform::RatMatrix| format!("{}x{}", m.rows(), m.cols());
    let mut summary = String::new();
    if t_out.is_none() && s_out.is_none() {
        summary = format!("{t_text}\n{s_text}");
    } else {
        if let Some(p) = t_out {
            write(p, &t_text)?;
            summary += &format!("wrote T ({}) to {}\n", shape(&f.t), display(p));
        }
        if let Some(p) = s_out {
            write(p, &s_text)?;
            summary += &format!("wrote S ({}) to {}\n", shape(&f.s), display(p));
        }
        summary += &format!("slack matrix = T S: {valid}\n");
    }
    let inputs = json!({
        "ext": display(ext),
        "hpoly": display(hpoly),
        "vpoly": display(vpoly),
        "t": path_value(t_out),
        "s": path_value(s_out),
    });
    let results = json!({
        "inner_dim": f.inner_dim(),
        "t_shape": [f.t.rows(), f.t.cols()],
        "s_shape": [f.s.rows(), f.s.cols()],
        "valid": valid,
        "t": report::matrix(&f.t),
        "s": report::matrix(&f.s),
    });
    let status = if valid { Status::Ok } else { Status::NotVerified };
    Ok(("factorize", inputs, results, summary, status, None))
}
