//! Static registry of verification checks and the JSON report.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cache;
use crate::error::{Error, Result};
use crate::geometry3d::{golden_rectangles, icosahedron_model, is_even_permutation, rectangle_partitions, rectangle_triples_action, rotation_group, SpherePoint};
use crate::groupkit::{
    build_cayley, center_and_commutator, character_table, conjugacy_classes, defining_character, mckay_graph, presentation_witness,
    CharacterTable, CharacterTableOptions, FiniteGroupTable,
};
use crate::icosian::{gamma_enumerate, generate_closure, closure_generators, icosian_zbasis, paper_families, GammaGroup, IcosianBasis};
use crate::klein::{
    build_invariants, covariant, cp1_configuration, exact_group_matrices, invariance_check, orbit_triple, q5_to_c, sheet_count,
    syzygy_constants, Cp1Configuration, CovariantKind, HomoPoly2, IcosahedralMap, Invariants, Mat2Q5, Syzygy,
};
use crate::lattice::{
    e8_standard_basis, even_unimodular_check, graph_iso_e8, lattice_isometry, quadratic_form, root_basis_and_diagram, short_vectors,
    verify_isometry, IntegerLattice, IsometryOptions,
};
use crate::linalg::det;
use crate::numberfield::{format_rational, rat_int};
use crate::polytope600::{cell_complex, left_orbit_size, vertex_figure, CellComplex600};

pub const SCHEMA: &str = "icosa-e8-report/1";
pub const DEFAULT_SEED: u64 = 120;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    All,
    Icosians,
    Klein,
    Mckay,
    Polytope,
}

impl Target {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => Target::All,
            "icosians" => Target::Icosians,
            "klein" => Target::Klein,
            "mckay" => Target::Mckay,
            "polytope" => Target::Polytope,
            _ => return None,
        })
    }

    fn includes(self, group: Target) -> bool {
        self == Target::All || self == group
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Float-tier tolerance; exact checks ignore it.
    pub tolerance: f64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: DEFAULT_SEED, tolerance: DEFAULT_TOLERANCE, cache_dir: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub exact: bool,
    pub details: Value,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub tolerance: f64,
    pub precision: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub target: Target,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub config: ConfigEcho,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The report with every `elapsed_ms` set to zero.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

type Outcome = Result<(bool, Value)>;

struct CheckSpec {
    name: &'static str,
    group: Target,
    exact: bool,
    run: fn(&Context) -> Outcome,
}

/// Registry order is report order.
const REGISTRY: &[CheckSpec] = &[
    CheckSpec { name: "gamma.enumeration", group: Target::Icosians, exact: true, run: check_gamma },
    CheckSpec { name: "icosian.lattice", group: Target::Icosians, exact: true, run: check_icosian_lattice },
    CheckSpec { name: "icosian.short_vectors", group: Target::Icosians, exact: true, run: check_short_vectors },
    CheckSpec { name: "icosian.root_diagram", group: Target::Icosians, exact: true, run: check_root_diagram },
    CheckSpec { name: "icosian.isometry", group: Target::Icosians, exact: true, run: check_isometry },
    CheckSpec { name: "geometry.rotation_group", group: Target::Icosians, exact: true, run: check_rotations },
    CheckSpec { name: "geometry.rectangles", group: Target::Icosians, exact: true, run: check_rectangles },
    CheckSpec { name: "group.classes", group: Target::Mckay, exact: true, run: check_classes },
    CheckSpec { name: "group.center_commutator", group: Target::Mckay, exact: true, run: check_center },
    CheckSpec { name: "group.presentation", group: Target::Mckay, exact: true, run: check_presentation },
    CheckSpec { name: "group.character_table", group: Target::Mckay, exact: true, run: check_character_table },
    CheckSpec { name: "group.mckay_graph", group: Target::Mckay, exact: true, run: check_mckay },
    CheckSpec { name: "klein.configuration", group: Target::Klein, exact: false, run: check_configuration },
    CheckSpec { name: "klein.exact_matrices", group: Target::Klein, exact: true, run: check_exact_matrices },
    CheckSpec { name: "klein.invariants", group: Target::Klein, exact: true, run: check_invariants },
    CheckSpec { name: "klein.invariance", group: Target::Klein, exact: true, run: check_invariance },
    CheckSpec { name: "klein.covariants", group: Target::Klein, exact: true, run: check_covariants },
    CheckSpec { name: "klein.syzygy", group: Target::Klein, exact: true, run: check_syzygy },
    CheckSpec { name: "klein.icosahedral_map", group: Target::Klein, exact: false, run: check_map },
    CheckSpec { name: "klein.sheets", group: Target::Klein, exact: false, run: check_sheets },
    CheckSpec { name: "klein.orbit_triples", group: Target::Klein, exact: false, run: check_orbit_triples },
    CheckSpec { name: "polytope.cell_complex", group: Target::Polytope, exact: true, run: check_cells },
    CheckSpec { name: "polytope.vertex_figure", group: Target::Polytope, exact: true, run: check_vertex_figure },
];

pub fn check_names(target: Target) -> Vec<&'static str> {
    REGISTRY.iter().filter(|c| target.includes(c.group)).map(|c| c.name).collect()
}

type Slot<T> = OnceLock<std::result::Result<T, String>>;

/// Shared artifacts, each computed at most once per run.
pub struct Context {
    cfg: VerifyConfig,
    gamma: Slot<GammaGroup>,
    cayley: Slot<FiniteGroupTable>,
    chars: Slot<CharacterTable>,
    basis: Slot<IcosianBasis>,
    shells: Slot<Vec<Vec<i64>>>,
    config: Slot<Cp1Configuration>,
    mats: Slot<Vec<Mat2Q5>>,
    invariants: Slot<Invariants>,
    syzygy: Slot<Syzygy>,
    cells: Slot<CellComplex600>,
}

fn slot<'a, T>(s: &'a Slot<T>, f: impl FnOnce() -> Result<T>) -> Result<&'a T> {
    s.get_or_init(|| f().map_err(|e| e.to_string())).as_ref().map_err(|e| Error::consistency(format!("prerequisite failed: {e}")))
}

impl Context {
    pub fn new(cfg: VerifyConfig) -> Self {
        Context {
            cfg,
            gamma: OnceLock::new(),
            cayley: OnceLock::new(),
            chars: OnceLock::new(),
            basis: OnceLock::new(),
            shells: OnceLock::new(),
            config: OnceLock::new(),
            mats: OnceLock::new(),
            invariants: OnceLock::new(),
            syzygy: OnceLock::new(),
            cells: OnceLock::new(),
        }
    }

    fn cached<T, F>(&self, file: &str, kind: &str, compute: F) -> Result<T>
    where
        T: Serialize + serde::de::DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        match &self.cfg.cache_dir {
            Some(dir) => cache::load_or_compute(&dir.join(file), kind, compute).map(|(v, _)| v),
            None => compute(),
        }
    }

    pub fn gamma(&self) -> Result<&GammaGroup> {
        slot(&self.gamma, gamma_enumerate)
    }

    pub fn cayley(&self) -> Result<&FiniteGroupTable> {
        slot(&self.cayley, || {
            let g = self.gamma()?;
            let t: FiniteGroupTable = self.cached("cayley.json", "cayley-table", || build_cayley(g))?;
            if t.order != g.order() {
                return Err(Error::consistency("cached Cayley table has the wrong order"));
            }
            Ok(t)
        })
    }

    pub fn character_table(&self) -> Result<&CharacterTable> {
        slot(&self.chars, || {
            let t = self.cayley()?;
            let opts = CharacterTableOptions { seed: self.cfg.seed, ..CharacterTableOptions::default() };
            let ct: CharacterTable = self.cached(&format!("character-table-{}.json", self.cfg.seed), "character-table", || character_table(t, opts))?;
            ct.verify()?;
            Ok(ct)
        })
    }

    pub fn icosian_basis(&self) -> Result<&IcosianBasis> {
        slot(&self.basis, || icosian_zbasis(self.gamma()?))
    }

    pub fn icosian_lattice(&self) -> Result<IntegerLattice> {
        IntegerLattice::from_gram(self.icosian_basis()?.gram.clone())
    }

    fn shells(&self) -> Result<&Vec<Vec<i64>>> {
        slot(&self.shells, || {
            let l = self.icosian_lattice()?;
            self.cached("icosian-short-vectors-4.json", "short-vectors", || Ok(short_vectors(&l, &rat_int(4))))
        })
    }

    pub fn cp1(&self) -> Result<&Cp1Configuration> {
        slot(&self.config, cp1_configuration)
    }

    pub fn exact_matrices(&self) -> Result<&Vec<Mat2Q5>> {
        slot(&self.mats, || exact_group_matrices(self.gamma()?, self.cp1()?))
    }

    pub fn invariants(&self) -> Result<&Invariants> {
        slot(&self.invariants, || build_invariants(self.cp1()?))
    }

    pub fn syzygy(&self) -> Result<&Syzygy> {
        slot(&self.syzygy, || {
            let inv = self.invariants()?;
            syzygy_constants(&inv.v, &inv.e, &inv.f)
        })
    }

    pub fn cells(&self) -> Result<&CellComplex600> {
        slot(&self.cells, || cell_complex(self.gamma()?))
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        r.set_stream(stream);
        r
    }
}

/// Runs every registered check of `target` in registry order.
pub fn run_verification(target: Target, cfg: VerifyConfig) -> VerificationReport {
    let echo = ConfigEcho { seed: cfg.seed, tolerance: cfg.tolerance, precision: "f64".into() };
    let ctx = Context::new(cfg);
    let checks: Vec<CheckRecord> = REGISTRY
        .iter()
        .filter(|c| target.includes(c.group))
        .map(|c| {
            let start = Instant::now();
            let (ok, details) = match (c.run)(&ctx) {
                Ok(r) => r,
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            CheckRecord {
                name: c.name.into(),
                status: if ok { Status::Pass } else { Status::Fail },
                exact: c.exact,
                details,
                elapsed_ms: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    VerificationReport {
        schema: SCHEMA.into(),
        target,
        summary: Summary { total: checks.len(), passed, failed: checks.len() - passed },
        checks,
        config: echo,
    }
}

fn check_gamma(ctx: &Context) -> Outcome {
    let g = ctx.gamma()?;
    let sizes: Vec<usize> = paper_families().iter().map(Vec::len).collect();
    let generated = generate_closure(&closure_generators());
    let same = generated.len() == g.order() && generated.iter().all(|q| g.contains(q));
    Ok((g.order() == 120 && same, json!({ "order": g.order(), "family_sizes": sizes, "generator_closure": generated.len(), "closed": true })))
}

fn check_icosian_lattice(ctx: &Context) -> Outcome {
    let b = ctx.icosian_basis()?;
    let r = even_unimodular_check(&b.gram)?;
    let literal = det(&b.half_gram());
    let ok = b.rank() == 8 && r.integral && r.even && r.det == rat_int(1);
    Ok((ok, json!({
        "rank": b.rank(),
        "integral": r.integral,
        "even": r.even,
        "det": format_rational(&r.det),
        "form": "2·τ(Re(p·q̄))",
        "det_of_tau_re_form": format_rational(&literal),
    })))
}

fn check_short_vectors(ctx: &Context) -> Outcome {
    let l = ctx.icosian_lattice()?;
    let shells = ctx.shells()?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for v in shells {
        *counts.entry(format_rational(&quadratic_form(&l, v))).or_default() += 1;
    }
    let ok = counts.get("2") == Some(&240) && counts.get("4") == Some(&2160) && counts.len() == 2;
    Ok((ok, json!({ "bound": 4, "counts": counts })))
}

fn check_root_diagram(ctx: &Context) -> Outcome {
    let rs = root_basis_and_diagram(&ctx.icosian_lattice()?)?;
    let iso = graph_iso_e8(&rs.graph);
    Ok((iso.is_some() && rs.roots.len() == 240, json!({
        "roots": rs.roots.len(),
        "simple_roots": rs.simple.len(),
        "legs": rs.graph.leg_lengths(),
        "isomorphism_to_e8": iso,
    })))
}

fn check_isometry(ctx: &Context) -> Outcome {
    let (l1, l2) = (ctx.icosian_lattice()?, e8_standard_basis());
    let Some(u) = lattice_isometry(&l1, &l2, IsometryOptions::default())? else {
        return Ok((false, json!({ "found": false })));
    };
    let d = det(&u.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect::<Vec<_>>());
    let ok = verify_isometry(&l1, &l2, &u) && d.abs() == rat_int(1);
    Ok((ok, json!({ "found": true, "det": format_rational(&d), "u": u })))
}

fn check_rotations(ctx: &Context) -> Outcome {
    let g = ctx.gamma()?;
    let rg = rotation_group(g, &icosahedron_model())?;
    let mut kernel = rg.kernel.clone();
    kernel.sort();
    let mut expect = vec![g.identity_index(), g.minus_one_index()];
    expect.sort();
    Ok((rg.order() == 60 && kernel == expect, json!({ "order": rg.order(), "kernel": kernel })))
}

fn check_rectangles(ctx: &Context) -> Outcome {
    let model = icosahedron_model();
    let rects = golden_rectangles(&model);
    let parts = rectangle_partitions(&rects);
    let rg = rotation_group(ctx.gamma()?, &model)?;
    let perms = rectangle_triples_action(&rg, &model)?;
    let distinct: std::collections::BTreeSet<[usize; 5]> = perms.iter().copied().collect();
    let even = perms.iter().all(|p| is_even_permutation(p));
    let closed = perms.iter().all(|a| perms.iter().all(|b| distinct.contains(&std::array::from_fn(|i| a[b[i]]))));
    let ok = rects.len() == 15 && parts.len() == 5 && perms.len() == 60 && distinct.len() == 60 && even && closed;
    Ok((ok, json!({ "rectangles": rects.len(), "partitions": parts.len(), "permutations": distinct.len(), "all_even": even, "closed": closed })))
}

fn check_classes(ctx: &Context) -> Outcome {
    let cl = conjugacy_classes(ctx.cayley()?);
    let mut sizes: Vec<usize> = cl.iter().map(Vec::len).collect();
    sizes.sort();
    Ok((sizes == [1, 1, 12, 12, 12, 12, 20, 20, 30], json!({ "count": cl.len(), "sizes": sizes })))
}

fn check_center(ctx: &Context) -> Outcome {
    let (g, t) = (ctx.gamma()?, ctx.cayley()?);
    t.check_associativity()?;
    let (center, comm) = center_and_commutator(t);
    let (q, _) = t.quotient(&center)?;
    let expect: std::collections::BTreeSet<usize> = [g.identity_index(), g.minus_one_index()].into();
    let ok = center == expect && comm.len() == 120 && q.order == 60;
    Ok((ok, json!({ "center": center, "commutator_order": comm.len(), "quotient_order": q.order })))
}

fn check_presentation(ctx: &Context) -> Outcome {
    let (g, t) = (ctx.gamma()?, ctx.cayley()?);
    let w = presentation_witness(t)?;
    let fmt = |i: usize| g.get(i).to_string();
    Ok((w.z == g.minus_one_index(), json!({ "v": fmt(w.v), "e": fmt(w.e), "f": fmt(w.f), "value": fmt(w.z) })))
}

fn check_character_table(ctx: &Context) -> Outcome {
    let ct = ctx.character_table()?;
    let mut dims = ct.dims.clone();
    dims.sort();
    let sum_sq: u32 = dims.iter().map(|d| d * d).sum();
    Ok((dims == [1, 2, 2, 3, 3, 4, 4, 5, 6] && sum_sq == 120, json!({ "dims": ct.dims, "sum_of_squares": sum_sq, "orthogonality": "exact", "seed_used": ct.seed_used })))
}

fn check_mckay(ctx: &Context) -> Outcome {
    let (g, ct) = (ctx.gamma()?, ctx.character_table()?);
    let mk = mckay_graph(ct, &defining_character(g, &ct.classes))?;
    let trivial = mk.dims.iter().position(|&d| d == 1).ok_or_else(|| Error::consistency("no trivial node"))?;
    let finite = graph_iso_e8(&mk.dynkin_without(&[trivial])).is_some();
    Ok((mk.is_affine_e8() && finite && mk.is_balanced(), json!({ "affine_e8": mk.is_affine_e8(), "minus_trivial_is_e8": finite, "graph": mk.to_json() })))
}

fn check_configuration(ctx: &Context) -> Outcome {
    let c = ctx.cp1()?;
    let radii: Vec<f64> = c.vertices.iter().filter_map(|w| w.finite()).map(|z| z.norm()).filter(|r| *r > 1e-9).collect();
    let (r1, r2) = (radii.iter().cloned().fold(f64::MAX, f64::min), radii.iter().cloned().fold(0.0, f64::max));
    let ok = (c.vertices.len(), c.edge_midpoints.len(), c.face_centers.len()) == (12, 30, 20) && (r1 * r2 - 1.0).abs() <= 1e-9;
    Ok((ok, json!({ "vertices": c.vertices.len(), "edge_midpoints": c.edge_midpoints.len(), "face_centers": c.face_centers.len(), "r1": r1, "r2": r2 })))
}

fn check_exact_matrices(ctx: &Context) -> Outcome {
    let m = ctx.exact_matrices()?;
    Ok((m.len() == 120, json!({ "count": m.len(), "determinants": "all 1", "closed": true })))
}

fn check_invariants(ctx: &Context) -> Outcome {
    let inv = ctx.invariants()?;
    let mut v = vec![0i64; 13];
    (v[1], v[6], v[11]) = (1, 11, -1);
    let expect_v = HomoPoly2::from_ints(&v);
    let v_ok = inv.v == expect_v || inv.v == expect_v.scale(&rat_int(-1));
    let degs = (inv.v.degree(), inv.e.degree(), inv.f.degree());
    let primitive = [&inv.v, &inv.e, &inv.f].iter().all(|p| p.primitive() == **p);
    Ok((v_ok && degs == (12, 30, 20) && primitive, json!({ "V": inv.v.to_string(), "degrees": [degs.0, degs.1, degs.2], "polynomials": inv.to_json() })))
}

fn check_invariance(ctx: &Context) -> Outcome {
    let (inv, m) = (ctx.invariants()?, ctx.exact_matrices()?);
    let res: Vec<bool> = [&inv.v, &inv.e, &inv.f].iter().map(|p| invariance_check(p, m)).collect();
    let moved = !invariance_check(&HomoPoly2::z1(), m);
    Ok((res.iter().all(|&b| b) && moved, json!({ "V": res[0], "E": res[1], "F": res[2], "z1_moved": moved })))
}

fn check_covariants(ctx: &Context) -> Outcome {
    let inv = ctx.invariants()?;
    let h = covariant(&inv.v, None, CovariantKind::Hessian)?.ratio_to(&inv.f);
    let j = covariant(&inv.v, Some(&inv.f), CovariantKind::Jacobian)?.ratio_to(&inv.e);
    Ok((h.is_some() && j.is_some(), json!({
        "hessian_over_F": h.as_ref().map(format_rational),
        "jacobian_over_E": j.as_ref().map(format_rational),
    })))
}

fn check_syzygy(ctx: &Context) -> Outcome {
    let s = ctx.syzygy()?;
    Ok((true, json!({ "kernel_dimension": 1, "a": s.a.to_string(), "b": s.b.to_string(), "c": s.c.to_string(), "norm": format_rational(&s.norm()) })))
}

fn check_map(ctx: &Context) -> Outcome {
    let (c, inv, s) = (ctx.cp1()?, ctx.invariants()?, ctx.syzygy()?);
    let m = IcosahedralMap::new(&inv.v, &inv.f, &s.norm())?;
    let tol = ctx.cfg.tolerance;
    let poles = c.vertices.iter().all(|w| m.eval_at(*w) == SpherePoint::Infinity);
    let worst = |pts: &[SpherePoint], target: f64| {
        pts.iter()
            .map(|w| m.eval_at(*w).finite().map_or(f64::INFINITY, |z| (z - target).norm()))
            .fold(0.0, f64::max)
    };
    let (zero_res, one_res) = (worst(&c.face_centers, 0.0), worst(&c.edge_midpoints, 1.0));
    Ok((poles && zero_res <= tol && one_res <= tol, json!({ "vertices_at_infinity": poles, "face_residual": zero_res, "edge_residual": one_res })))
}

fn check_sheets(ctx: &Context) -> Outcome {
    let (inv, s) = (ctx.invariants()?, ctx.syzygy()?);
    let mut rng = ctx.rng(1);
    let mut generic = Vec::new();
    let mut ok = true;
    for _ in 0..3 {
        let w = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(0.1..3.0));
        let sc = sheet_count(SpherePoint::Finite(w), &inv.v, &inv.f, s)?;
        let distinct = sc.roots.len() == 60 && sc.total() == 60 && sc.min_separation() > 1e-6;
        ok &= distinct;
        generic.push(json!({ "w": [w.re, w.im], "distinct_roots": sc.roots.len() }));
    }
    let mut special = serde_json::Map::new();
    for (label, w, m, n) in [
        ("0", SpherePoint::Finite(Complex64::new(0.0, 0.0)), 3u32, 20usize),
        ("1", SpherePoint::Finite(Complex64::new(1.0, 0.0)), 2, 30),
        ("inf", SpherePoint::Infinity, 5, 12),
    ] {
        let p = sheet_count(w, &inv.v, &inv.f, s)?.profile();
        ok &= p == BTreeMap::from([(m, n)]);
        special.insert(label.into(), json!(p.iter().map(|(k, v)| format!("{v}x{k}")).collect::<Vec<_>>()));
    }
    Ok((ok, json!({ "generic": generic, "special": special })))
}

fn check_orbit_triples(ctx: &Context) -> Outcome {
    let (inv, s, mats) = (ctx.invariants()?, ctx.syzygy()?, ctx.exact_matrices()?);
    let mats: Vec<_> = mats.iter().map(q5_to_c).collect();
    let mut rng = ctx.rng(2);
    let tol = ctx.cfg.tolerance;
    let (mut worst_res, mut worst_dev) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let mut c = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let p = (c(), c());
        let g = &mats[rng.random_range(0..mats.len())];
        let gp = (g[0][0] * p.0 + g[0][1] * p.1, g[1][0] * p.0 + g[1][1] * p.1);
        let (t, u) = (orbit_triple(p, inv, s), orbit_triple(gp, inv, s));
        worst_res = worst_res.max(t.residual);
        let r2 = (p.0.norm_sqr() + p.1.norm_sqr()).max(1e-300);
        for (x, y, poly) in [(t.v, u.v, &inv.v), (t.e, u.e, &inv.e), (t.f, u.f, &inv.f)] {
            let scale = poly.l1_norm() * r2.sqrt().powi(poly.degree() as i32);
            worst_dev = worst_dev.max((x - y).norm() / scale);
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    let o = orbit_triple((zero, zero), inv, s);
    let origin = (o.v, o.e, o.f) == (zero, zero, zero);
    Ok((worst_res <= 1e-8 && worst_dev <= tol && origin, json!({ "samples": 100, "max_syzygy_residual": worst_res, "max_translate_deviation": worst_dev, "origin_singular": origin })))
}

fn check_cells(ctx: &Context) -> Outcome {
    let c = ctx.cells()?;
    let counts = c.counts();
    let regular = c.degrees().iter().all(|&d| d == 12);
    let inc = c.edge_incidences().iter().all(|&x| x == (5, 5));
    let transitive = left_orbit_size(ctx.gamma()?, 0) == 120;
    let ok = counts == [120, 720, 1200, 600] && c.euler_characteristic() == 0 && regular && inc && c.is_consistent() && transitive;
    Ok((ok, json!({
        "counts": counts,
        "euler_characteristic": c.euler_characteristic(),
        "edge_inner_product": c.min_dot.to_string(),
        "twelve_regular": regular,
        "edge_in_5_triangles_and_5_tetrahedra": inc,
        "vertex_transitive": transitive,
    })))
}

fn check_vertex_figure(ctx: &Context) -> Outcome {
    let (g, c, t) = (ctx.gamma()?, ctx.cells()?, ctx.cayley()?);
    let figs = (0..g.order()).map(|v| vertex_figure(c, g, t, v)).collect::<Result<Vec<_>>>()?;
    let matches = figs.iter().all(|f| f.matches_icosahedron());
    let permutes = figs.iter().all(|f| f.stabilizer_permutes);
    let one = &figs[g.identity_index()];
    let distinct: std::collections::BTreeSet<String> = one.ratios.iter().map(ToString::to_string).collect();
    Ok((matches && permutes, json!({ "all_match_icosahedron": matches, "stabilizer_permutes_neighbors": permutes, "neighbor_ratio_values": distinct })))
}
