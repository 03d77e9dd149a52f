//! Named verification suites shared by the command line and the test harness.
//! Each suite is a list of checks with a status and a witness on failure.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classical::{
    bernoulli, delta, eisenstein, eta_power, gamma2_e1, gamma2_e2, level1_membership, ClassicalError,
};
use crate::deghilb::{self, a_star_membership, phi, relation_residual_with, Generators, RELATION_R};
use crate::gralg::{
    cyclotomic_product_test, hironaka_audit, palindrome_test, Generator, GeneratorSet, GralgError, HilbertSeries,
    Relation,
};
use crate::numeric::{int, rat, QuadRational, Rational};
use crate::paramod::{
    fricke_permute, fricke_sign, gritsenko_lift, pullback_p4, pullback_p4_lift, pullback_p8, witt_taylor,
    JacobiFormData, LiftSource, P4Window, ParamodError, QuadWindow,
};
use crate::series::{BiExp, SeriesError};
use crate::sympcheck::{self, Embedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Undecided,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteResult {
    fn new(suite: &str) -> Self {
        Self { suite: suite.to_string(), checks: Vec::new() }
    }

    fn check(&mut self, id: impl Into<String>, ok: bool, witness: impl fmt::Display) {
        let status = if ok { Status::Pass } else { Status::Fail };
        let witness = if ok { String::new() } else { witness.to_string() };
        self.checks.push(CheckResult { id: id.into(), status, witness });
    }

    /// Records a check whose inputs may be too short to decide.
    fn check_or_undecided<E: fmt::Display>(&mut self, id: impl Into<String>, r: Result<bool, E>, witness: impl fmt::Display) {
        match r {
            Ok(ok) => self.check(id, ok, witness),
            Err(e) => self.checks.push(CheckResult { id: id.into(), status: Status::Undecided, witness: e.to_string() }),
        }
    }

    pub fn worst(&self) -> Status {
        self.checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Undecided => "undecided",
            };
            write!(f, "  {:<width$}  {tag}", c.id)?;
            if !c.witness.is_empty() {
                write!(f, "  {}", c.witness)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Classical,
    Deghilb,
    Paramod,
    Sympcheck,
    Hilbert,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["classical", "deghilb", "paramod", "sympcheck", "hilbert", "all"];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "classical" => Suite::Classical,
            "deghilb" => Suite::Deghilb,
            "paramod" => Suite::Paramod,
            "sympcheck" => Suite::Sympcheck,
            "hilbert" => Suite::Hilbert,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite `{s}`; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("{}: {source}", path.display())]
    Data { path: PathBuf, source: ParamodError },
    #[error(transparent)]
    Paramod(#[from] ParamodError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Gralg(#[from] GralgError),
}

/// Runs one suite, or all of them in a fixed order.
pub fn run(suite: Suite, data_dir: &Path) -> Result<Vec<SuiteResult>, SuiteError> {
    Ok(match suite {
        Suite::Classical => vec![classical()?],
        Suite::Deghilb => vec![deghilb()?],
        Suite::Paramod => vec![paramod(data_dir)?],
        Suite::Sympcheck => vec![symplectic()],
        Suite::Hilbert => vec![hilbert()?],
        Suite::All => {
            // load data first so a bad directory fails before the long suites
            let p = paramod(data_dir)?;
            vec![classical()?, deghilb()?, p, symplectic(), hilbert()?]
        }
    })
}

pub fn classical() -> Result<SuiteResult, SuiteError> {
    let mut s = SuiteResult::new("classical");
    let t = 20;
    let b12 = bernoulli(12)?;
    s.check("bernoulli/B12", b12 == rat(-691, 2730), &b12);
    let e4 = eisenstein(4, t)?.expansion;
    let e6 = eisenstein(6, t)?.expansion;
    let e8 = eisenstein(8, t)?.expansion;
    let e10 = eisenstein(10, t)?.expansion;
    s.check("eisenstein/E4^2 = E8", (&e4 * &e4).agrees_with(&e8)?, "differs");
    s.check("eisenstein/E4 E6 = E10", (&e4 * &e6).agrees_with(&e10)?, "differs");
    let d = delta(t).expansion;
    let disc = (&e4.pow(3) - &e6.pow(2)).scale(&rat(1, 1728));
    s.check("delta/(E4^3 - E6^2)/1728", disc.agrees_with(&d)?, "differs");
    let (e1, e2) = (gamma2_e1(t).expansion, gamma2_e2(t).expansion);
    let rhs = (&(&e1 + &e2) * &(&e1.scale(&int(2)) - &e2)) * (&e2.scale(&int(2)) - &e1);
    let eta12 = eta_power(12, t).expansion;
    s.check("eta^12 factorization", rhs.scale(&rat(1, 54)).agrees_with(&eta12)?, "differs");
    let coords = level1_membership(&d, 12)?;
    let want = Some(vec![((3, 0), rat(1, 1728)), ((0, 2), rat(-1, 1728))]);
    let got = coords.as_ref().map(|v| {
        let mut v = v.clone();
        v.sort_by_key(|t| std::cmp::Reverse(t.0));
        v
    });
    s.check("level one/Delta coordinates", got == want, format!("{got:?}"));
    s.check("level one/e1 is not level one", level1_membership(&e1.with_grain(1)?, 2)?.is_none(), "e1 accepted");
    Ok(s)
}

pub fn deghilb() -> Result<SuiteResult, SuiteError> {
    let mut s = SuiteResult::new("deghilb");
    let g = Generators::new(10);
    s.check(
        "delta6/two constructions to (10,10)",
        g.delta6_from_f().expansion().agrees_with(g.delta6.expansion())?,
        "differs",
    );
    let r = relation_residual_with(&g, &RELATION_R);
    s.check("relation R/zero residual", r.is_zero(), format!("{r:?}"));
    let mut bad = RELATION_R;
    bad[2].0 += 1;
    s.check("relation R/perturbation detected", !relation_residual_with(&g, &bad).is_zero(), "perturbed relation also vanishes");

    let t = 15;
    let (x2, x4, d6, x8) = (deghilb::x2(t), deghilb::x4(t), deghilb::delta6(t), deghilb::x8(t));
    let e1 = gamma2_e1(t).expansion;
    let e2 = gamma2_e2(t).expansion;
    s.check("boundary/X2 -> e1", phi(1, &x2)?.agrees_with(&e1)?, "differs");
    let half = &e1.scale(&rat(1, 2)) - &e2;
    s.check("boundary/X4 -> (e1/2 - e2)^2/144", phi(1, &x4)?.agrees_with(&(&half * &half).scale(&rat(1, 144)))?, "differs");
    s.check("boundary/Delta6 -> 0", phi(1, &d6)?.is_zero(), "nonzero");
    let eta8 = eta_power(8, t).expansion;
    s.check("boundary/X8 -> eta^8(t) eta^8(2t)", phi(1, &x8)?.agrees_with(&(&eta8 * &eta8.scale_up(2)))?, "differs");
    s.check("boundary/second boundary of X8 is the negative", phi(2, &x8)? == -phi(1, &x8)?, "differs");

    let e4 = eisenstein(4, 10)?.expansion.with_grain(2)?;
    s.check("diagonal/X2 -> E4", g.x2.expansion().diagonal()?.agrees_with(&e4)?, "differs");
    let dd = delta(10).expansion.with_grain(2)?;
    s.check("diagonal/Delta6 -> Delta", g.delta6.expansion().diagonal()?.agrees_with(&dd)?, "differs");
    s.check("diagonal/X4 -> 0", g.x4.expansion().diagonal()?.is_zero(), "nonzero");

    let sq = g.x2.pow(2).try_add(&g.x4.scale(&int(-48))).expect("same weight");
    s.check_or_undecided("A*/X2^2 - 48 X4 is in A*", a_star_membership(&sq), "rejected");
    s.check_or_undecided("A*/X2 is not in A*", a_star_membership(&g.x2).map(|b| !b), "accepted");
    s.check_or_undecided("A*/Delta6 is in A*", a_star_membership(&g.delta6), "rejected");
    Ok(s)
}

fn load(dir: &Path, rel: &str) -> Result<JacobiFormData, SuiteError> {
    let path = dir.join(rel);
    JacobiFormData::from_file(&path).map_err(|source| SuiteError::Data { path, source })
}

fn p4_row(p: &BiExp) -> Result<(Rational, Rational), SeriesError> {
    Ok((p.coeff([1, 1])?, p.coeff([3, 1])?))
}

/// Level-5 and level-7 tables shipped in the data directory.
pub const TABLES: [&str; 9] = [
    "level5/g6.jf",
    "level5/g7.jf",
    "level5/g8.jf",
    "level5/g10.jf",
    "level7/g5.jf",
    "level7/g6.jf",
    "level7/g7.jf",
    "level7/g8.jf",
    "level7/g10.jf",
];

pub fn paramod(dir: &Path) -> Result<SuiteResult, SuiteError> {
    let tables = TABLES.iter().map(|f| Ok((*f, load(dir, f)?))).collect::<Result<Vec<_>, SuiteError>>()?;
    let get = |name: &str| &tables.iter().find(|(f, _)| *f == name).expect("listed").1;
    let mut s = SuiteResult::new("paramod");

    let g = Generators::new(4);
    let d6 = g.delta6.expansion().clone();
    let x2d6 = (&g.x2 * &g.delta6).expansion().clone();
    let x4d6 = (&g.x4 * &g.delta6).expansion().clone();
    let rows: [(&str, (i64, i64), Option<BiExp>); 6] = [
        ("level5/g6.jf", (2, -24), Some(d6.scale(&int(2)))),
        ("level5/g8.jf", (2, 24), Some(x2d6.scale(&int(2)))),
        ("level5/g10.jf", (0, 16), Some(x4d6.scale(&int(16)))),
        ("level7/g6.jf", (0, 0), None),
        ("level7/g8.jf", (1, 12), Some(x2d6.clone())),
        ("level7/g10.jf", (0, -2), Some(x4d6.scale(&int(-2)))),
    ];
    for (f, (c1, c3), target) in rows {
        let p = pullback_p4_lift(get(f))?;
        let row = p4_row(&p)?;
        s.check(format!("P4 row/{f}"), row == (int(c1), int(c3)), format!("{} {}", row.0, row.1));
        let ok = match &target {
            Some(t) => p.agrees_with(t)?,
            None => p.is_zero(),
        };
        s.check(format!("P4 identity/{f}"), ok, format!("{}", p.to_json()));
    }

    let g7 = gritsenko_lift(get("level5/g7.jf"), 1, 1)?;
    let moments: Vec<Rational> = [1, 3, 5].iter().map(|n| witt_taylor(&g7, *n).coeff([1, 1])).collect::<Result<_, _>>()?;
    s.check("diagonal moments/level5 g7", moments == [int(0), int(0), int(-2880)], format!("{moments:?}"));

    let g5 = get("level7/g5.jf");
    let p8 = pullback_p8(&LiftSource::new(g5)?, QuadWindow::default())?;
    let xi: QuadRational = "1/2+1/4*sqrt(2)".parse().expect("literal");
    let at = p8.coeff_at(&xi)?;
    let c = g5.coeff(1, -5).unwrap_or_default();
    s.check("P8/level7 g5 coefficient is c(1,-5)", at == c && !c.is_zero(), format!("{at} vs {c}"));

    for (f, phi) in &tables {
        let lift = gritsenko_lift(phi, 1, 1)?;
        let sym = lift.terms().all(|([a, b, c], v)| lift.alpha(*c, *b, *a).as_ref() == Some(v));
        s.check(format!("lift symmetry/{f}"), sym, "alpha(a,b,c) != alpha(c,b,a)");
        let lhs = pullback_p4(&fricke_permute(&lift)?, P4Window::default())?;
        let rhs = pullback_p4(&lift, P4Window::default())?.swap();
        s.check(format!("Fricke-P4 swap/{f}"), lhs.agrees_with(&rhs)?, "swap mismatch");
        let sign = fricke_sign(&lift)?;
        let want = if phi.weight % 2 == 0 { 1 } else { -1 };
        s.check(format!("Fricke sign/{f}"), sign == Some(want), format!("{sign:?}"));
    }
    Ok(s)
}

pub fn symplectic() -> SuiteResult {
    let mut s = SuiteResult::new("sympcheck");
    let mut add = |checks: Vec<sympcheck::Check>| {
        for c in checks {
            s.check(c.id, c.passed, c.witness);
        }
    };
    add(sympcheck::fixed_matrices()
        .into_iter()
        .map(|(name, m, n)| sympcheck::Check { id: format!("membership/{name}"), passed: m.in_paramodular(n), witness: format!("{m:?}") })
        .collect());
    for (which, seed) in [(Embedding::Phi1, 1), (Embedding::Phi4, 2)] {
        for n in [5, 7] {
            add(sympcheck::verify_embedding(which, n, 100, seed));
        }
    }
    for n in [5, 7] {
        add(sympcheck::verify_fricke_swap(n));
    }
    add(sympcheck::verify_h5_fixing());
    add(sympcheck::verify_hilbert_inversions());
    s
}

/// The normalized relation `R` in the exponent order `X2, X4, Delta6, X8`.
pub fn relation_r() -> Relation {
    let mut terms = vec![(vec![0, 0, 0, 2], int(1))];
    terms.extend(RELATION_R.iter().map(|(c, [a, b, d])| (vec![*a, *b, *d, 0], int(-c))));
    Relation { terms }
}

/// True when `r` is a nonzero multiple of `s`.
pub fn proportional(r: &Relation, s: &Relation) -> bool {
    let mut a = r.terms.clone();
    let mut b = s.terms.clone();
    a.retain(|(_, c)| !c.is_zero());
    b.retain(|(_, c)| !c.is_zero());
    a.sort();
    b.sort();
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    let ratio = &a[0].1 / &b[0].1;
    a.iter().zip(&b).all(|((ma, ca), (mb, cb))| ma == mb && *ca == &ratio * cb)
}

/// Generator presets for rank and relation computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `X2, X4, Delta6, X8`.
    Mg,
    /// The eight generators of `A*`.
    AStar,
    /// `e1, e2`.
    Gamma2,
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "MG" | "mg" => Ok(Preset::Mg),
            "Astar" | "astar" => Ok(Preset::AStar),
            "gamma2" => Ok(Preset::Gamma2),
            _ => Err(format!("unknown preset `{s}`; expected MG, Astar or gamma2")),
        }
    }
}

const BI_WINDOWS: [[i64; 2]; 2] = [[6, 8], [8, 10]];

fn bi_gens(forms: Vec<(&str, &deghilb::GForm)>) -> Result<GeneratorSet<[i64; 2]>, GralgError> {
    let gens = forms
        .into_iter()
        .map(|(l, f)| Generator::new(l, u32::try_from(f.weight).expect("positive weight"), f.expansion().clone()))
        .collect();
    GeneratorSet::new(gens, BI_WINDOWS)
}

pub fn mg_generators(g: &Generators) -> Result<GeneratorSet<[i64; 2]>, GralgError> {
    bi_gens(vec![("X2", &g.x2), ("X4", &g.x4), ("D6", &g.delta6), ("X8", &g.x8)])
}

pub fn a_star_generators(g: &Generators, with_anti: bool) -> Result<GeneratorSet<[i64; 2]>, GralgError> {
    let sym = g.a_star_symmetric();
    let anti = g.a_star_antisymmetric();
    let labels = ["X4'", "A6", "B6", "A8", "A10", "X4X8", "D6X8", "X2D6X8"];
    let forms = sym.iter().chain(if with_anti { &anti[..] } else { &[] });
    bi_gens(labels.iter().copied().zip(forms).collect())
}

pub fn gamma2_generators() -> Result<GeneratorSet<i64>, GralgError> {
    let gens = vec![Generator::new("e1", 2, gamma2_e1(16).expansion), Generator::new("e2", 2, gamma2_e2(16).expansion)];
    GeneratorSet::new(gens, [24, 32])
}

fn relation_json(r: &Relation) -> Value {
    Value::Array(r.terms.iter().map(|(m, c)| json!([m, c.to_string()])).collect())
}

fn relations_table<K: crate::gralg::SlotKey>(set: &GeneratorSet<K>, kmax: u32) -> Result<Value, GralgError> {
    let mut rows = Vec::new();
    for k in 0..=kmax {
        let monos = set.monomials(k);
        let rels = set.relations_in_weight(k)?;
        rows.push(json!({
            "k": k,
            "monomials": monos.len(),
            "dimension": monos.len() - rels.len(),
            "relations": rels.iter().map(relation_json).collect::<Vec<_>>(),
        }));
    }
    Ok(json!({ "generators": set.labels(), "weights": set.weights(), "table": rows }))
}

/// Per-weight dimensions and relation bases for a preset, as JSON.
pub fn relations_report(preset: Preset, kmax: u32) -> Result<Value, GralgError> {
    match preset {
        Preset::Gamma2 => relations_table(&gamma2_generators()?, kmax),
        Preset::Mg => relations_table(&mg_generators(&Generators::new(5))?, kmax),
        Preset::AStar => relations_table(&a_star_generators(&Generators::new(5), true)?, kmax),
    }
}

pub fn hilbert() -> Result<SuiteResult, SuiteError> {
    let mut s = SuiteResult::new("hilbert");
    for (name, h) in [("level 5", HilbertSeries::level5()), ("level 7", HilbertSeries::level7())] {
        s.check(format!("Stanley/{name} numerator is palindromic"), palindrome_test(&h.numerator), "not palindromic");
        s.check(
            format!("Stanley/{name} numerator is not a cyclotomic product"),
            !cyclotomic_product_test(&h.numerator),
            "cyclotomic product",
        );
    }

    let g = Generators::new(5);
    let kmax = 20u32;
    for (name, set, h) in [
        ("A* symmetric", a_star_generators(&g, false)?, HilbertSeries::a_star_symmetric()),
        ("A*", a_star_generators(&g, true)?, HilbertSeries::a_star()),
    ] {
        let want = h.expand(kmax as usize);
        for k in (0..=kmax).step_by(2) {
            let got = set.dimension_by_rank(k);
            let expected = want[k as usize];
            s.check_or_undecided(
                format!("dimension/{name}/k={k:02}"),
                got.clone().map(|d| d as i64 == expected),
                format!("rank {got:?}, series {expected}"),
            );
        }
    }

    let mg = mg_generators(&g)?;
    let free = bi_gens(vec![("X2", &g.x2), ("X4", &g.x4), ("D6", &g.delta6)])?;
    let x8 = [Generator::new("X8", 8, g.x8.expansion().clone())];
    match hironaka_audit(&free, &x8, kmax) {
        Ok(rows) => {
            for r in rows.iter().filter(|r| r.k % 2 == 0) {
                s.check(format!("Hironaka/k={:02}", r.k), r.predicted == r.rank, format!("{} vs {}", r.predicted, r.rank));
            }
        }
        Err(e) => s.checks.push(CheckResult { id: "Hironaka".into(), status: Status::Undecided, witness: e.to_string() }),
    }
    for k in (0..16).step_by(2) {
        let rels = mg.relations_in_weight(k);
        s.check_or_undecided(format!("relations/none at k={k:02}"), rels.as_ref().map(|r| r.is_empty()).map_err(|e| e.clone()), format!("{rels:?}"));
    }
    let at16 = mg.relations_in_weight(16);
    s.check_or_undecided(
        "relations/one at k=16 proportional to R",
        at16.as_ref().map(|r| r.len() == 1 && proportional(&r[0], &relation_r())).map_err(|e| e.clone()),
        format!("{at16:?}"),
    );
    Ok(s)
}
