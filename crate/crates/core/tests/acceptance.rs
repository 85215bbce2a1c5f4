//! Acceptance suite: one line per criterion, then a summary.
//!
//! A criterion listed in `EXPECTED_FAIL` prints FAIL together with the
//! measured values; the run only errors if such a criterion unexpectedly
//! passes or any other criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use icosa_e8::geometry3d::{golden_rectangles, icosahedron_model, is_even_permutation, rectangle_partitions, rectangle_triples_action, rotation_group, SpherePoint};
use icosa_e8::groupkit::{
    build_cayley, center_and_commutator, character_table, conjugacy_classes, defining_character, mckay_graph, presentation_witness,
    CharacterTableOptions,
};
use icosa_e8::icosian::{closure_generators, gamma_enumerate, generate_closure, icosian_zbasis, paper_families};
use icosa_e8::klein::{
    build_invariants, covariant, cp1_configuration, encode_ppm, exact_group_matrices, invariance_check, orbit_triple, q5_to_c,
    render_phase_portrait, render_pixels, sheet_count, syzygy_constants, CovariantKind, HomoPoly2, IcosahedralMap, Window,
};
use icosa_e8::lattice::{
    e8_standard_basis, even_unimodular_check, graph_iso_e8, lattice_isometry, quadratic_form, root_basis_and_diagram, short_vectors,
    IntegerLattice, IsometryOptions,
};
use icosa_e8::linalg::{det, mat_mul, transpose};
use icosa_e8::numberfield::{format_rational, rat, rat_int, GoldenRational, Rational};
use icosa_e8::polytope600::{cell_complex, vertex_figure};
use icosa_e8::verify::{run_verification, Target, VerifyConfig};

type Outcome = Result<String, String>;

const SEED: u64 = 2024;
const EXPECTED_FAIL: &[u32] = &[2];

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn gamma_construction() -> Outcome {
    let fam = paper_families();
    let sizes: Vec<usize> = fam.iter().map(Vec::len).collect();
    let g = gamma_enumerate().map_err(e)?;
    let listed: BTreeSet<_> = fam.iter().flatten().map(|q| q.sort_key()).collect();
    ensure(listed.len() == 120 && g.order() == 120, format!("{} distinct listed elements", listed.len()))?;
    let els = g.elements();
    let closed = els.iter().all(|p| els.iter().all(|q| g.contains(&(p * q))));
    ensure(closed, "not closed under multiplication")?;
    let gen = generate_closure(&closure_generators());
    let same = gen.len() == 120 && gen.iter().all(|q| g.contains(q));
    ensure(same, "generator closure differs")?;
    Ok(format!("families {sizes:?} give 120 distinct elements; 14400 products closed; generator closure identical"))
}

fn icosian_e8() -> Outcome {
    let g = gamma_enumerate().map_err(e)?;
    let b = icosian_zbasis(&g).map_err(e)?;
    let literal = even_unimodular_check(&b.half_gram()).map_err(e)?;
    let trace = even_unimodular_check(&b.gram).map_err(e)?;
    let lattice = IntegerLattice::from_gram(b.gram.clone()).map_err(e)?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for v in short_vectors(&lattice, &rat_int(4)) {
        *counts.entry(format_rational(&quadratic_form(&lattice, &v))).or_default() += 1;
    }
    let rs = root_basis_and_diagram(&lattice).map_err(e)?;
    let legs = rs.graph.leg_lengths();
    let trace_ok = b.rank() == 8
        && trace.integral
        && trace.even
        && trace.det == rat_int(1)
        && counts.get("2") == Some(&240)
        && counts.get("4") == Some(&2160)
        && graph_iso_e8(&rs.graph).is_some()
        && legs == Some(vec![5, 3, 2]);
    let summary = format!(
        "rank {}; τ(Re(p·q̄)) Gram: integral {}, even {}, det {}; 2·τ(Re(p·q̄)) Gram: integral {}, even {}, det {}, shells {:?}, legs {:?}",
        b.rank(),
        literal.integral,
        literal.even,
        format_rational(&literal.det),
        trace.integral,
        trace.even,
        format_rational(&trace.det),
        counts,
        legs
    );
    ensure(trace_ok, format!("trace form does not give E8: {summary}"))?;
    let literal_ok = literal.integral && literal.even && literal.det == rat_int(1);
    if literal_ok {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn explicit_isometry() -> Outcome {
    let g = gamma_enumerate().map_err(e)?;
    let l1 = IntegerLattice::from_gram(icosian_zbasis(&g).map_err(e)?.gram).map_err(e)?;
    let l2 = e8_standard_basis();
    let gs = l2.gram();
    let diag = (0..8).all(|i| gs[i][i] == rat_int(2));
    let off = (0..8).all(|i| (0..8).all(|j| i == j || gs[i][j] == rat_int(0) || gs[i][j] == rat_int(-1)));
    let basis_det = det(l2.basis().ok_or("standard lattice lacks a basis")?);
    ensure(diag && off && basis_det.abs() == rat_int(1), "standard Gram is not of the displayed shape")?;
    let u = lattice_isometry(&l1, &l2, IsometryOptions::default()).map_err(e)?.ok_or("no isometry found")?;
    let uq: Vec<Vec<Rational>> = u.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect();
    let d = det(&uq);
    let image = mat_mul(&mat_mul(&uq, l1.gram()), &transpose(&uq));
    ensure(d.abs() == rat_int(1), format!("det U = {d}"))?;
    ensure(image == *gs, "U·G·Uᵀ differs from the standard Gram")?;
    Ok(format!("U found, det U = {}, U·G_icosian·Uᵀ = G_standard exactly", format_rational(&d)))
}

fn klein_invariants() -> Outcome {
    let g = gamma_enumerate().map_err(e)?;
    let c = cp1_configuration().map_err(e)?;
    let inv = build_invariants(&c).map_err(e)?;
    let mats = exact_group_matrices(&g, &c).map_err(e)?;
    let degs = (inv.v.degree(), inv.e.degree(), inv.f.degree());
    ensure(degs == (12, 30, 20), format!("degrees {degs:?}"))?;
    ensure([&inv.v, &inv.e, &inv.f].iter().all(|p| p.primitive() == **p), "not primitive")?;
    let mut v = vec![0i64; 13];
    (v[1], v[6], v[11]) = (1, 11, -1);
    let expect = HomoPoly2::from_ints(&v);
    ensure(inv.v == expect || inv.v == expect.scale(&rat_int(-1)), format!("V = {}", inv.v))?;
    ensure([&inv.v, &inv.e, &inv.f].iter().all(|p| invariance_check(p, &mats)), "invariance fails")?;
    let s = syzygy_constants(&inv.v, &inv.e, &inv.f).map_err(e)?;
    let h = covariant(&inv.v, None, CovariantKind::Hessian).map_err(e)?.ratio_to(&inv.f).ok_or("Hessian not ∝ F")?;
    let j = covariant(&inv.v, Some(&inv.f), CovariantKind::Jacobian).map_err(e)?.ratio_to(&inv.e).ok_or("Jacobian not ∝ E")?;
    Ok(format!(
        "V = {}; invariant under 120 exact matrices; syzygy ({}, {}, {}) spans a 1-dim kernel; Hess(V) = {}·F, Jac(V,F) = {}·E",
        inv.v,
        s.a,
        s.b,
        s.c,
        format_rational(&h),
        format_rational(&j)
    ))
}

fn icosahedral_map() -> Outcome {
    let c = cp1_configuration().map_err(e)?;
    let inv = build_invariants(&c).map_err(e)?;
    let s = syzygy_constants(&inv.v, &inv.e, &inv.f).map_err(e)?;
    let m = IcosahedralMap::new(&inv.v, &inv.f, &s.norm()).map_err(e)?;
    ensure(c.vertices.iter().all(|w| m.eval_at(*w) == SpherePoint::Infinity), "a vertex is not a pole")?;
    let worst = |pts: &[SpherePoint], t: f64| pts.iter().map(|w| m.eval_at(*w).finite().map_or(f64::INFINITY, |z| (z - t).norm())).fold(0.0, f64::max);
    let (r0, r1) = (worst(&c.face_centers, 0.0), worst(&c.edge_midpoints, 1.0));
    ensure(r0 <= 1e-9 && r1 <= 1e-9, format!("residuals {r0:e}, {r1:e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..3 {
        let w = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(0.1..3.0));
        let sc = sheet_count(SpherePoint::Finite(w), &inv.v, &inv.f, &s).map_err(e)?;
        ensure(sc.roots.len() == 60 && sc.min_separation() > 1e-6, format!("w = {w}: {} roots", sc.roots.len()))?;
    }
    for (w, m_, n) in [
        (SpherePoint::Finite(Complex64::new(0.0, 0.0)), 3u32, 20usize),
        (SpherePoint::Finite(Complex64::new(1.0, 0.0)), 2, 30),
        (SpherePoint::Infinity, 5, 12),
    ] {
        let p = sheet_count(w, &inv.v, &inv.f, &s).map_err(e)?.profile();
        ensure(p == BTreeMap::from([(m_, n)]), format!("profile {p:?}"))?;
    }
    Ok(format!("ℐ = 0 / 1 / ∞ on 20 / 30 / 12 points (residuals {r0:.1e}, {r1:.1e}); 3 generic fibres of 60 distinct points; 20×3, 30×2, 12×5"))
}

fn orbit_triples() -> Outcome {
    let g = gamma_enumerate().map_err(e)?;
    let c = cp1_configuration().map_err(e)?;
    let inv = build_invariants(&c).map_err(e)?;
    let s = syzygy_constants(&inv.v, &inv.e, &inv.f).map_err(e)?;
    let mats: Vec<_> = exact_group_matrices(&g, &c).map_err(e)?.iter().map(q5_to_c).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut res, mut dev) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let mut z = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let p = (z(), z());
        let m = &mats[rng.random_range(0..120)];
        let gp = (m[0][0] * p.0 + m[0][1] * p.1, m[1][0] * p.0 + m[1][1] * p.1);
        let (a, b) = (orbit_triple(p, &inv, &s), orbit_triple(gp, &inv, &s));
        res = res.max(a.residual);
        let r = (p.0.norm_sqr() + p.1.norm_sqr()).sqrt();
        for (x, y, poly) in [(a.v, b.v, &inv.v), (a.e, b.e, &inv.e), (a.f, b.f, &inv.f)] {
            dev = dev.max((x - y).norm() / (poly.l1_norm() * r.powi(poly.degree() as i32)));
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    let o = orbit_triple((zero, zero), &inv, &s);
    ensure(res <= 1e-8, format!("syzygy residual {res:e}"))?;
    ensure(dev <= 1e-9, format!("translate deviation {dev:e}"))?;
    ensure((o.v, o.e, o.f) == (zero, zero, zero), "origin not singular")?;
    Ok(format!("100 points: max relative syzygy residual {res:.1e}, max translate deviation {dev:.1e}; origin ↦ (0, 0, 0)"))
}

fn group_theory() -> Outcome {
    let g = gamma_enumerate().map_err(e)?;
    let t = build_cayley(&g).map_err(e)?;
    let mut sizes: Vec<usize> = conjugacy_classes(&t).iter().map(Vec::len).collect();
    sizes.sort();
    ensure(sizes == [1, 1, 12, 12, 12, 12, 20, 20, 30], format!("class sizes {sizes:?}"))?;
    let (center, comm) = center_and_commutator(&t);
    ensure(center == BTreeSet::from([g.identity_index(), g.minus_one_index()]), "center is not {±1}")?;
    ensure(comm.len() == 120, "not perfect")?;
    let (q, proj) = t.quotient(&center).map_err(e)?;
    ensure(q.order == 60, "quotient order")?;
    let w = presentation_witness(&t).map_err(e)?;
    ensure(w.z == g.minus_one_index(), "v⁵ ≠ −1")?;
    let one = q.identity;
    let rel = q.pow(proj[w.v], 5) == one && q.pow(proj[w.e], 2) == one && q.pow(proj[w.f], 3) == one && q.op(q.op(proj[w.v], proj[w.e]), proj[w.f]) == one;
    ensure(rel, "quotient relations fail")?;
    Ok(format!("9 classes {sizes:?}; center {{±1}}; commutator order 120; Γ/Z order 60; witness v = {}, e = {}, f = {}", g.get(w.v), g.get(w.e), g.get(w.f)))
}

fn mckay() -> Outcome {
    let g = gamma_enumerate().map_err(e)?;
    let t = build_cayley(&g).map_err(e)?;
    let ct = character_table(&t, CharacterTableOptions { seed: SEED, ..CharacterTableOptions::default() }).map_err(e)?;
    ct.verify().map_err(e)?;
    let mut dims = ct.dims.clone();
    dims.sort();
    let sq: u32 = dims.iter().map(|d| d * d).sum();
    ensure(dims == [1, 2, 2, 3, 3, 4, 4, 5, 6] && sq == 120, format!("dims {dims:?}"))?;
    let mk = mckay_graph(&ct, &defining_character(&g, &ct.classes)).map_err(e)?;
    let trivial = mk.dims.iter().position(|&d| d == 1).ok_or("no trivial character")?;
    ensure(mk.is_affine_e8(), "McKay graph is not affine E8")?;
    ensure(graph_iso_e8(&mk.dynkin_without(&[trivial])).is_some(), "removing the trivial node does not give E8")?;
    Ok(format!("dims {dims:?}, Σd² = {sq}, exact orthogonality; McKay graph affine E8; minus trivial node ≅ E8"))
}

fn geometry() -> Outcome {
    let g = gamma_enumerate().map_err(e)?;
    let model = icosahedron_model();
    let rg = rotation_group(&g, &model).map_err(e)?;
    let kernel: BTreeSet<usize> = rg.kernel.iter().copied().collect();
    ensure(rg.order() == 60 && kernel == BTreeSet::from([g.identity_index(), g.minus_one_index()]), "rotation group or kernel")?;
    let parts = rectangle_partitions(&golden_rectangles(&model));
    ensure(parts.len() == 5, format!("{} partitions", parts.len()))?;
    let perms = rectangle_triples_action(&rg, &model).map_err(e)?;
    let set: BTreeSet<[usize; 5]> = perms.iter().copied().collect();
    let closed = perms.iter().all(|a| perms.iter().all(|b| set.contains(&std::array::from_fn(|i| a[b[i]]))));
    ensure(set.len() == 60 && perms.iter().all(|p| is_even_permutation(p)) && closed, "induced permutations are not A5")?;
    Ok("60 rotations, kernel {±1}; 5 rectangle partitions; 60 distinct even permutations closed under composition".into())
}

fn six_hundred_cell() -> Outcome {
    let g = gamma_enumerate().map_err(e)?;
    let c = cell_complex(&g).map_err(e)?;
    let t = build_cayley(&g).map_err(e)?;
    ensure(c.counts() == [120, 720, 1200, 600], format!("counts {:?}", c.counts()))?;
    ensure(c.euler_characteristic() == 0, "Euler characteristic")?;
    ensure(c.degrees().iter().all(|&d| d == 12), "not 12-regular")?;
    ensure(c.min_dot == &GoldenRational::phi() * &GoldenRational::from_rational(rat(1, 2)), "edge inner product is not Φ/2")?;
    let f = vertex_figure(&c, &g, &t, g.identity_index()).map_err(e)?;
    ensure(f.matches_icosahedron(), "vertex figure is not an icosahedron")?;
    Ok(format!("counts {:?}, χ = 0, 12-regular, edge ⟨p,q⟩ = Φ/2, vertex figure of 1 matches the icosahedron", c.counts()))
}

fn reproducibility() -> Outcome {
    let cfg = VerifyConfig { seed: SEED, ..VerifyConfig::default() };
    let a = run_verification(Target::All, cfg.clone());
    let b = run_verification(Target::All, cfg);
    ensure(a.all_passed(), format!("verify all failed: {:?}", a.summary))?;
    ensure(a.without_timing() == b.without_timing(), "reports differ")?;
    let c = cp1_configuration().map_err(e)?;
    let inv = build_invariants(&c).map_err(e)?;
    let s = syzygy_constants(&inv.v, &inv.e, &inv.f).map_err(e)?;
    let m = IcosahedralMap::new(&inv.v, &inv.f, &s.norm()).map_err(e)?;
    let win = Window::default();
    let dir = tempfile::tempdir().map_err(e)?;
    let mut files = Vec::new();
    for name in ["a.ppm", "b.ppm"] {
        let p = dir.path().join(name);
        render_phase_portrait(&m, &win, (160, 160), &p).map_err(e)?;
        files.push(std::fs::read(p).map_err(e)?);
    }
    ensure(files[0] == files[1], "renders differ")?;
    ensure(files[0] == encode_ppm(160, 160, &render_pixels(&m, &win, 160, 160)), "file differs from in-memory render")?;
    Ok(format!("two `verify all` runs ({} checks) identical except timing; 160×160 render byte-identical", a.checks.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "Γ construction", gamma_construction),
        (2, "icosians → E8", icosian_e8),
        (3, "explicit isometry", explicit_isometry),
        (4, "Klein invariants", klein_invariants),
        (5, "icosahedral map", icosahedral_map),
        (6, "orbit triples", orbit_triples),
        (7, "group theory", group_theory),
        (8, "McKay correspondence", mckay),
        (9, "rotation group and A5", geometry),
        (10, "600-cell", six_hundred_cell),
        (11, "reproducibility", reproducibility),
    ];
    let start = Instant::now();
    let mut passed = 0;
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let ms = t.elapsed().as_millis();
        let expected_fail = EXPECTED_FAIL.contains(&n);
        match &outcome {
            Ok(msg) => {
                passed += 1;
                println!("PASS  {n:>2} {name} ({ms} ms): {msg}");
                if expected_fail {
                    unexpected.push(format!("criterion {n} was expected to fail but passed"));
                }
            }
            Err(msg) => {
                let tag = if expected_fail { " [known, see decisions ledger]" } else { "" };
                println!("FAIL  {n:>2} {name} ({ms} ms){tag}: {msg}");
                if !expected_fail {
                    unexpected.push(format!("criterion {n} failed"));
                }
            }
        }
    }
    println!("acceptance: {passed}/11 passed in {:.1} s", start.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        for u in &unexpected {
            eprintln!("{u}");
        }
        std::process::exit(1);
    }
}
