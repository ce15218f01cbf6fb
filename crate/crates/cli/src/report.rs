//! Golden regression harness behind `report-all`.

use std::collections::BTreeMap;
use std::fmt;

use anyhow::{anyhow, bail, Context, Result};
use quasifold_core::affine::{
    classify, decompose_affine_root, extension_by_name, lift_transpose_project, search_single_extensions,
    symmetrised_ltp, DEFAULT_ENTRY_BOUND,
};
use quasifold_core::coxeter::{axis_vector, coxeter_group};
use quasifold_core::double_ext::{distinct_diagrams, enumerate_double, kernel_trivial};
use quasifold_core::projection::{derive_maps, lift_bordered};
use quasifold_core::quasicrystal::{
    cardinality_table, first_shell_size, generate_fragment, is_distinguished, OrbitGroup,
};
use quasifold_core::{
    project, root_system, Axis, GoldenRat, GroupId, Matrix, ProjectionMap, RootVector, Subspace, TranslationSpec,
};
use serde::{Deserialize, Serialize};

pub const EMBEDDED: &str = include_str!("../golden.toml");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Count(i64),
    Counts(Vec<i64>),
    Names(Vec<String>),
    Golden(Vec<GoldenRat>),
    Matrix(Vec<Vec<GoldenRat>>),
    Flag(bool),
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Count(n) => write!(f, "{n}"),
            Value::Counts(v) => write!(f, "[{}]", join(v)),
            Value::Names(v) => write!(f, "[{}]", join(v)),
            Value::Golden(v) => write!(f, "[{}]", join(v)),
            Value::Matrix(rows) => {
                let rows: Vec<String> = rows.iter().map(|r| join(r)).collect();
                write!(f, "[{}]", rows.join("; "))
            }
            Value::Flag(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Deserialize)]
struct Manifest {
    check: Vec<CheckSpec>,
}

#[derive(Debug, Deserialize)]
struct CheckSpec {
    id: String,
    criterion: usize,
    kind: String,
    value: toml::Value,
    citation: String,
}

fn golden_of(v: &toml::Value) -> Result<GoldenRat> {
    let s = v.as_str().ok_or_else(|| anyhow!("expected a string, found {v}"))?;
    Ok(s.parse()?)
}

fn array(v: &toml::Value) -> Result<&Vec<toml::Value>> {
    v.as_array().ok_or_else(|| anyhow!("expected an array, found {v}"))
}

impl CheckSpec {
    fn expected(&self) -> Result<Value> {
        let v = &self.value;
        let int = |x: &toml::Value| x.as_integer().ok_or_else(|| anyhow!("expected an integer, found {x}"));
        Ok(match self.kind.as_str() {
            "count" => Value::Count(int(v)?),
            "counts" => Value::Counts(array(v)?.iter().map(int).collect::<Result<_>>()?),
            "names" => Value::Names(
                array(v)?
                    .iter()
                    .map(|x| x.as_str().map(String::from).ok_or_else(|| anyhow!("expected a string, found {x}")))
                    .collect::<Result<_>>()?,
            ),
            "golden" => Value::Golden(array(v)?.iter().map(golden_of).collect::<Result<_>>()?),
            "matrix" => Value::Matrix(
                array(v)?
                    .iter()
                    .map(|row| array(row)?.iter().map(golden_of).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
            ),
            "flag" => Value::Flag(v.as_bool().ok_or_else(|| anyhow!("expected a boolean, found {v}"))?),
            other => bail!("unknown kind `{other}`"),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
    pub citation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionRecord {
    pub criterion: usize,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

fn rows(m: &Matrix) -> Vec<Vec<GoldenRat>> {
    m.to_rows()
}

fn border(m: &Matrix) -> (Vec<GoldenRat>, Vec<GoldenRat>) {
    (m.row(0)[1..].to_vec(), m.column(0)[1..].to_vec())
}

const STANDARD: [&str; 5] = ["E8=", "D6=", "D6<", "D6>", "A4="];
const INDUCED: [&str; 5] = ["H4=", "H3=", "H3<", "H3>", "H2="];

/// Runs the full pipeline and returns every checked quantity by id.
pub fn compute() -> Result<BTreeMap<String, Value>> {
    let mut out = BTreeMap::new();
    let mut put = |id: String, v: Value| {
        out.insert(id, v);
    };

    for g in GroupId::ALL {
        put(format!("roots.{g}"), Value::Count(root_system(g).len() as i64));
    }
    for g in [GroupId::A4, GroupId::H2, GroupId::H3, GroupId::H4] {
        coxeter_group(g).with_context(|| format!("building {g}"))?;
    }

    for map in derive_maps() {
        let mut images: Vec<RootVector> =
            root_system(map.source).iter().map(|r| project(&map, r)).collect::<std::result::Result<_, _>>()?;
        let total = images.len();
        images.sort();
        images.dedup();
        let mut expected: Vec<RootVector> =
            root_system(map.target).iter().flat_map(|r| [r.clone(), r.scale(&GoldenRat::tau())]).collect();
        expected.sort();
        put(format!("projection.{}", map.source), Value::Flag(images.len() == total && images == expected));
    }

    for base in [GroupId::A4, GroupId::D6, GroupId::E8] {
        let mut names: Vec<String> =
            search_single_extensions(base, DEFAULT_ENTRY_BOUND)?.into_iter().filter_map(|h| h.extension.name).collect();
        names.sort();
        put(format!("extensions.{base}"), Value::Names(names));
    }
    for name in STANDARD {
        let ext = extension_by_name(name)?;
        put(format!("matrix.{name}"), Value::Matrix(rows(&ext.full().entries)));
        put(format!("affine_root.{name}"), Value::Golden(decompose_affine_root(&ext)?.coords));
    }

    let mut conjugates_ok = true;
    for name in INDUCED {
        let par = extension_by_name(name)?;
        let bar = extension_by_name(&name.replacen('H', "Hbar", 1))?;
        conjugates_ok &= bar.det().is_zero() && bar.full().entries == par.full().entries.conj();
        put(format!("induced.{name}"), Value::Matrix(rows(&par.full().entries)));

        let rec = classify(&par)?;
        let q = rec.reference.quadruplet();
        let small = |x| i64::try_from(x).map_err(|_| anyhow!("quadruplet entry too large"));
        put(
            format!("classify.{name}.reference"),
            Value::Counts(vec![small(&q.a)?, small(&q.b)?, small(&q.c)?, small(&q.d)?]),
        );
        put(format!("classify.{name}.k"), Value::Count(rec.k));
        put(format!("classify.{name}.xy"), Value::Golden(vec![rec.xy()]));
        put(
            format!("classify.{name}.multipliers"),
            Value::Golden(vec![rec.multipliers.0.clone(), rec.multipliers.1.clone()]),
        );
        put(format!("classify.{name}.v"), Value::Golden(rec.v.clone()));
        put(format!("classify.{name}.w"), Value::Golden(rec.w.clone()));
        classify(&bar)?;

        let ltp = lift_transpose_project(&par)?;
        let (v, w) = border(&ltp.entries);
        let ratio = v
            .iter()
            .zip(&w)
            .find(|(_, w)| !w.is_zero())
            .map(|(v, w)| v.checked_div(w))
            .transpose()?
            .unwrap_or_default();
        put(format!("ltp.{name}.v"), Value::Golden(v));
        put(format!("ltp.{name}.ratio"), Value::Golden(vec![ratio]));
    }
    put("induced.conjugates".into(), Value::Flag(conjugates_ok));

    let lengths = [GoldenRat::zero(), GoldenRat::sigma(), GoldenRat::one(), GoldenRat::tau()];
    for g in [GroupId::H2, GroupId::H3, GroupId::H4] {
        let table = cardinality_table(g, &lengths)?;
        put(format!("cardinality.{g}"), Value::Counts(table.iter().map(|r| r.1 as i64).collect()));
        let mut all = true;
        for l in &lengths[1..] {
            all &= is_distinguished(&TranslationSpec::new(g, Axis::Twofold, l.clone()))?;
        }
        put(format!("distinguished.{g}"), Value::Flag(all));

        let map = ProjectionMap::for_target(g, Subspace::Parallel)?;
        let lifted = lift_bordered(&map, &axis_vector(g, Axis::Twofold)?)?;
        put(format!("lift.{g}.v"), Value::Golden(border(&lifted.entries).0));
    }
    for (id, len) in [("half_T5", GoldenRat::from_ratio(1, 2)), ("T5", GoldenRat::one())] {
        let n = first_shell_size(&TranslationSpec::new(GroupId::H3, Axis::Fivefold, len), OrbitGroup::Rotations)?;
        put(format!("cardinality.H3.{id}"), Value::Count(n as i64));
    }
    for (id, len) in
        [("lambda_1", GoldenRat::one()), ("lambda_tau", GoldenRat::tau()), ("lambda_sigma", GoldenRat::sigma())]
    {
        let f = generate_fragment(&TranslationSpec::new(GroupId::H2, Axis::Twofold, len), 3)?;
        put(format!("shells.H2.{id}"), Value::Counts(f.cardinalities.shells[1..].iter().map(|&n| n as i64).collect()));
    }

    let mut trivial = 0;
    for g in [GroupId::A4, GroupId::D6, GroupId::E8] {
        let exts = enumerate_double(g)?;
        put(format!("double.{g}"), Value::Count(exts.len() as i64));
        if g == GroupId::A4 {
            put("double.A4.diagrams".into(), Value::Count(distinct_diagrams(&exts).len() as i64));
        }
        for e in &exts {
            if kernel_trivial(e)? {
                trivial += 1;
            }
        }
    }
    put("double.trivial_kernel".into(), Value::Count(trivial));

    let s = symmetrised_ltp("H4=")?;
    let (v, w) = border(&s.s);
    put("sltp.E8=.corner".into(), Value::Golden(vec![s.s[(0, 0)].clone()]));
    put("sltp.E8=.v".into(), Value::Golden(v));
    put("sltp.E8=.w".into(), Value::Golden(w));
    Ok(out)
}

/// Diffs the computed values against a manifest, grouped by criterion.
pub fn diff(manifest: &str, actual: &BTreeMap<String, Value>) -> Result<Vec<CriterionRecord>> {
    let manifest: Manifest = toml::from_str(manifest).context("reading golden manifest")?;
    let mut by_criterion: BTreeMap<usize, Vec<CheckResult>> = BTreeMap::new();
    for spec in manifest.check {
        let (pass, expected) = match spec.expected() {
            Ok(e) => (actual.get(&spec.id) == Some(&e), e.to_string()),
            Err(err) => (false, format!("invalid manifest value: {err}")),
        };
        let actual = actual.get(&spec.id).map_or_else(|| "no such check".to_string(), ToString::to_string);
        by_criterion.entry(spec.criterion).or_default().push(CheckResult {
            id: spec.id,
            pass,
            expected,
            actual,
            citation: spec.citation,
        });
    }
    Ok(by_criterion
        .into_iter()
        .map(|(criterion, checks)| CriterionRecord { criterion, pass: checks.iter().all(|c| c.pass), checks })
        .collect())
}
