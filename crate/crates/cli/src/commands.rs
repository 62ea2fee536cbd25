use std::fs;
use std::path::{Path, PathBuf};

use cyclehom::bar::{bar_complex, galois_homology, invariants_homology, FiniteGroup, GroupAction};
use cyclehom::bredon::{cp_dim, cp_generators, gm_over_r_table, point_dim, Bidegree};
use cyclehom::exact::SerialGroup;
use cyclehom::spectral::{build_constant_row_grid, edge_map, page, Orientation};
use cyclehom::{CoefficientRing, Error, FgAbelianGroup};
use num_integer::Integer;
use serde::Serialize;

use crate::app::{BredonArgs, GaloisArgs, GroupHomologyArgs, SeedArgs, SsArgs};
use crate::config::Config;
use crate::error::{CliError, Result};
use crate::files::{load_action, load_group, ActionFile, GroupFile, GroupRef, FORMAT_VERSION};

#[derive(Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_map: Option<&'static str>,
}

impl Meta {
    fn new(command: &'static str) -> Self {
        Meta {
            tool: "cyclehom",
            version: env!("CARGO_PKG_VERSION"),
            command,
            orientation: None,
            edge_map: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Degree {
    pub degree: usize,
    pub homology: SerialGroup,
    pub display: String,
}

impl Degree {
    fn new(degree: usize, g: &FgAbelianGroup) -> Self {
        Degree {
            degree,
            homology: g.to_serial(),
            display: g.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GroupHomologyReport {
    pub meta: Meta,
    pub order: usize,
    pub coefficients: String,
    pub max_degree: usize,
    pub truncation: usize,
    pub degrees: Vec<Degree>,
}

pub fn parse_coeff(s: &str) -> Result<CoefficientRing> {
    Ok(s.parse::<CoefficientRing>()?)
}

fn truncation(flag: Option<usize>, config: &Config, max_i: usize) -> Result<usize> {
    let n = flag.or(config.truncation).unwrap_or(max_i + 1);
    if n < max_i + 1 {
        return Err(Error::TruncationTooSmall {
            degree: max_i,
            needed: max_i + 1,
            got: n,
        }
        .into());
    }
    Ok(n)
}

pub fn group_homology(args: &GroupHomologyArgs, config: &Config) -> Result<GroupHomologyReport> {
    let g = load_group(&args.group)?;
    let coeff = parse_coeff(&args.coeff)?;
    let n = truncation(args.truncation, config, args.max_i)?;
    let groups = bar_complex(&g, args.max_i + 1).all_homology(coeff)?;
    Ok(GroupHomologyReport {
        meta: Meta::new("group-homology"),
        order: g.order(),
        coefficients: coeff.to_string(),
        max_degree: args.max_i,
        truncation: n,
        degrees: groups.iter().enumerate().map(|(i, h)| Degree::new(i, h)).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    Different,
    OutOfHypothesis,
}

#[derive(Debug, Serialize)]
pub struct GaloisDegree {
    pub degree: usize,
    pub orbit: SerialGroup,
    pub display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<SerialGroup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Serialize)]
pub struct GaloisReport {
    pub meta: Meta,
    pub order: usize,
    pub gamma_order: usize,
    pub coefficients: String,
    pub max_degree: usize,
    pub truncation: usize,
    /// Whether `|Γ|` is invertible in the coefficients.
    pub hypothesis: bool,
    pub degrees: Vec<GaloisDegree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

/// `|Γ|` is a unit in `A`.
fn gamma_invertible(action: &GroupAction, coeff: CoefficientRing) -> bool {
    let order = action.gamma_order() as u64;
    match coeff {
        CoefficientRing::Rationals => true,
        CoefficientRing::Integers => order == 1,
        CoefficientRing::ModN(n) => n.gcd(&order) == 1,
    }
}

pub fn galois(args: &GaloisArgs, config: &Config) -> Result<GaloisReport> {
    let action = load_action(&args.action)?;
    let coeff = parse_coeff(&args.coeff)?;
    let n = truncation(args.truncation, config, args.max_i)?;
    let hypothesis = gamma_invertible(&action, coeff);
    let mut degrees = Vec::new();
    for i in 0..=args.max_i {
        let orbit = galois_homology(&action, coeff, i, n)?;
        let (invariants, verdict) = if args.compare_invariants {
            let inv = invariants_homology(&action, coeff, i, n)?;
            let verdict = match (hypothesis, inv == orbit) {
                (false, _) => Verdict::OutOfHypothesis,
                (true, true) => Verdict::Equal,
                (true, false) => Verdict::Different,
            };
            (Some(inv.to_serial()), Some(verdict))
        } else {
            (None, None)
        };
        degrees.push(GaloisDegree {
            degree: i,
            orbit: orbit.to_serial(),
            display: orbit.to_string(),
            invariants,
            verdict,
        });
    }
    let verdict = args.compare_invariants.then(|| {
        if !hypothesis {
            Verdict::OutOfHypothesis
        } else if degrees.iter().all(|d| d.verdict == Some(Verdict::Equal)) {
            Verdict::Equal
        } else {
            Verdict::Different
        }
    });
    Ok(GaloisReport {
        meta: Meta::new("galois"),
        order: action.group().order(),
        gamma_order: action.gamma_order(),
        coefficients: coeff.to_string(),
        max_degree: args.max_i,
        truncation: n,
        hypothesis,
        degrees,
        verdict,
    })
}

#[derive(Debug, Serialize)]
pub struct EdgeReport {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub isomorphism: bool,
}

#[derive(Debug, Serialize)]
pub struct SsReport {
    pub meta: Meta,
    pub order: usize,
    pub prime: u64,
    pub bounds: [usize; 2],
    /// `e1[t][s]`
    pub e1: Vec<Vec<usize>>,
    /// `e2[t][s]`
    pub e2: Vec<Vec<usize>>,
    pub degenerate: bool,
    pub bottom_row: Vec<usize>,
    pub edge_maps: Vec<EdgeReport>,
    pub edge_isomorphism: bool,
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let bad = || CliError::Parse(format!("expected two degrees such as 4,4, got {s:?}"));
    let (a, b) = s.trim_matches(|c| c == '(' || c == ')').split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub fn ss(args: &SsArgs) -> Result<SsReport> {
    let g = load_group(&args.group)?;
    let coeff = parse_coeff(&args.coeff)?;
    let prime = match coeff {
        CoefficientRing::ModN(n) => coeff.prime_field().ok_or(Error::CompositeModulus(n))?,
        other => {
            return Err(CliError::Unsupported(format!("spectral pages need Z/ℓ coefficients with ℓ prime, got {other}")))
        }
    };
    let (ms, mt) = parse_pair(&args.bounds)?;
    let orientation = Orientation::from(args.orientation);
    let dc = build_constant_row_grid(&g, ms + 1, mt + 1, coeff)?;
    let window = |rows: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        rows.into_iter().take(mt + 1).map(|r| r.into_iter().take(ms + 1).collect()).collect()
    };
    let e1 = window(page(&dc, 1, coeff, orientation)?.rows());
    let e2 = window(page(&dc, 2, coeff, orientation)?.rows());
    let degenerate = e2.iter().skip(1).all(|row| row.iter().all(|&d| d == 0));
    let edge_maps = (0..=ms.min(mt))
        .map(|n| {
            let e = edge_map(&dc, n, coeff)?;
            Ok(EdgeReport {
                degree: n,
                source_dim: e.source_dim,
                target_dim: e.target_dim,
                rank: e.rank,
                isomorphism: e.is_isomorphism(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut meta = Meta::new("ss");
    meta.orientation = Some(orientation);
    meta.edge_map = Some("H^n(Tot) to the bottom row of the horizontal-first E_2");
    Ok(SsReport {
        meta,
        order: g.order(),
        prime,
        bounds: [ms, mt],
        bottom_row: e2[0].clone(),
        e1,
        e2,
        degenerate,
        edge_isomorphism: edge_maps.iter().all(|e| e.isomorphism),
        edge_maps,
    })
}

/// An inclusive range `a..b`, `a..=b`, or a single value.
fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || CliError::Parse(format!("expected an integer or a range a..b, got {s:?}"));
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let (lo, hi): (i64, i64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(CliError::Validation(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

/// `(p,q)`, `p,q` or a rectangle `p0..p1,q0..q1`.
fn parse_bidegrees(s: &str) -> Result<Vec<Bidegree>> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (p, q) = inner
        .split_once(',')
        .ok_or_else(|| CliError::Parse(format!("expected a bidegree such as (0,0), got {s:?}")))?;
    let ((p0, p1), (q0, q1)) = (parse_range(p)?, parse_range(q)?);
    Ok((p0..=p1).flat_map(|p| (q0..=q1).map(move |q| Bidegree::new(p, q))).collect())
}

#[derive(Debug, Serialize)]
pub struct BidegreeRow {
    pub p: i64,
    pub q: i64,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct RowEntry {
    pub s: u64,
    pub dimension: usize,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum BredonTable {
    Bidegrees { space: &'static str, rows: Vec<BidegreeRow> },
    Row { rows: Vec<RowEntry>, values: Vec<usize> },
}

#[derive(Debug, Serialize)]
pub struct BredonReport {
    pub meta: Meta,
    #[serde(flatten)]
    pub table: BredonTable,
}

pub fn bredon(args: &BredonArgs) -> Result<BredonReport> {
    let table = if let Some(spec) = &args.point {
        let rows = parse_bidegrees(spec)?
            .into_iter()
            .map(|d| BidegreeRow {
                p: d.p,
                q: d.q,
                dimension: point_dim(d),
                generators: None,
            })
            .collect();
        BredonTable::Bidegrees { space: "point", rows }
    } else if let Some(spec) = &args.cpinf {
        let rows = parse_bidegrees(spec)?
            .into_iter()
            .map(|d| BidegreeRow {
                p: d.p,
                q: d.q,
                dimension: cp_dim(d),
                generators: args.generators.then(|| cp_generators(d).iter().map(ToString::to_string).collect()),
            })
            .collect();
        BredonTable::Bidegrees { space: "cpinf", rows }
    } else {
        let spec = args.gm_table.as_deref().expect("clap requires one table");
        let (lo, hi) = parse_range(spec)?;
        if lo < 0 {
            return Err(CliError::Validation(format!("row degrees start at 0, got {lo}")));
        }
        let values: Vec<usize> = gm_over_r_table(hi as u64).split_off(lo as usize);
        let rows = values
            .iter()
            .enumerate()
            .map(|(k, &dimension)| RowEntry {
                s: lo as u64 + k as u64,
                dimension,
            })
            .collect();
        BredonTable::Row { rows, values }
    };
    Ok(BredonReport {
        meta: Meta::new("bredon"),
        table,
    })
}

pub fn bredon_csv(report: &BredonReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let res = match &report.table {
        BredonTable::Bidegrees { rows, .. } => {
            let with_gens = rows.iter().any(|r| r.generators.is_some());
            let mut header = vec!["p", "q", "dimension"];
            if with_gens {
                header.push("generators");
            }
            w.write_record(&header).and_then(|_| {
                rows.iter().try_for_each(|r| {
                    let mut rec = vec![r.p.to_string(), r.q.to_string(), r.dimension.to_string()];
                    if let Some(g) = &r.generators {
                        rec.push(g.join(", "));
                    }
                    w.write_record(&rec)
                })
            })
        }
        BredonTable::Row { rows, .. } => w.write_record(["s", "dimension"]).and_then(|_| {
            rows.iter()
                .try_for_each(|r| w.write_record([r.s.to_string(), r.dimension.to_string()]))
        }),
    };
    res.map_err(|e| CliError::Validation(format!("csv: {e}")))?;
    let bytes = w.into_inner().map_err(|e| CliError::Validation(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Serialize)]
pub struct SeedReport {
    pub meta: Meta,
    pub files: Vec<String>,
}

fn slug(name: &str) -> String {
    if name == "1" {
        "trivial".into()
    } else {
        name.to_lowercase().replace('/', "")
    }
}

fn write_json<T: Serialize>(root: &Path, rel: &str, value: &T) -> Result<()> {
    let path = root.join(rel);
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))
}

/// Writes every catalogued group of order at most 8, `μ_n` with complex
/// conjugation for `n = 2..=7`, and the trivial action on `S_3`.
pub fn seed_corpus(args: &SeedArgs) -> Result<SeedReport> {
    let root = &args.out;
    for dir in ["groups", "actions"] {
        let path = root.join(dir);
        fs::create_dir_all(&path).map_err(|e| CliError::io(&path, e))?;
    }
    let mut files = Vec::new();
    for (name, g) in FiniteGroup::small_groups(8) {
        let rel = format!("groups/{}.json", slug(&name));
        write_json(root, &rel, &GroupFile::from_group(&g))?;
        files.push(rel);
    }
    for n in 2..=7 {
        let g = FiniteGroup::cyclic(n);
        let file = ActionFile {
            format_version: FORMAT_VERSION.into(),
            group: GroupRef::Path(PathBuf::from(format!("../groups/z{n}.json"))),
            generators: vec![(0..n).map(|x| g.inverse(x)).collect()],
        };
        let rel = format!("actions/mu{n}-conjugation.json");
        write_json(root, &rel, &file)?;
        files.push(rel);
    }
    let trivial = ActionFile {
        format_version: FORMAT_VERSION.into(),
        group: GroupRef::Inline(GroupFile::from_group(&FiniteGroup::symmetric(3))),
        generators: Vec::new(),
    };
    write_json(root, "actions/s3-trivial.json", &trivial)?;
    files.push("actions/s3-trivial.json".into());
    files.sort();
    Ok(SeedReport {
        meta: Meta::new("seed-corpus"),
        files,
    })
}
