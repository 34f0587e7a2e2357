//! Property suites shared by the module tests and the acceptance run. Each
//! returns a description of the first counterexample it meets.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{
    equivalent_pair, random_automaton, random_ghat_element, random_pca_polytope, semiring_span_contains,
    subdistribution, Pair, TestRng,
};
use wazz::automata::{pair_submodule, SemiringTag};
use wazz::hilbert::nat_restriction;
use wazz::linalg::{dot, in_span, int, is_integral, rat, scale, unit_vec, Lattice, RMat, RVec, Rat};
use wazz::pca_functor::{
    ghat_apply, ghat_decompose, ghat_member, ghat_preimage, invariant_zero_set, is_ghat_coalgebra, pyramid_extension,
    reduce_invariant_set, GhatElement, LinearCoalgebra,
};
use wazz::polyhedra::{cone_restriction, minimize, simplex_restriction, LpOutcome, PcaPolytope, SimplexFamily};

/// Generators of `Z ∩ carrier` as built for the span node.
fn restricted_generators(tag: SemiringTag, gens: &[RVec], n1: usize, n2: usize) -> Vec<RVec> {
    let m = n1 + n2;
    match tag {
        SemiringTag::Nat => nat_restriction(&Lattice::from_rows(gens, m)),
        SemiringTag::QPlus | SemiringTag::RPlus => cone_restriction(gens, m),
        SemiringTag::Unit => simplex_restriction(gens, SimplexFamily::Product, n1, n2).generators,
        _ => gens.to_vec(),
    }
}

fn in_completion_span(tag: SemiringTag, gens: &[RVec], v: &[Rat]) -> bool {
    if tag.integral() {
        is_integral(v) && Lattice::from_rows(gens, v.len()).contains(v)
    } else {
        in_span(gens, v)
    }
}

fn in_product_carrier(tag: SemiringTag, v: &[Rat], n1: usize) -> bool {
    if tag == SemiringTag::Unit {
        tag.carrier_contains(&v[..n1]) && tag.carrier_contains(&v[n1..])
    } else {
        tag.carrier_contains(v)
    }
}

/// A vector of the completion span, pushed towards the carrier half the time.
fn sample(r: &mut TestRng, tag: SemiringTag, z: &[RVec], w: &[RVec], m: usize) -> RVec {
    let from = if r.gen_bool(0.5) && !w.is_empty() { w } else { z };
    let mut v = vec![Rat::zero(); m];
    let unit = tag == SemiringTag::Unit && std::ptr::eq(from, w);
    let weights: Vec<Rat> = from
        .iter()
        .map(|_| match (tag.integral(), unit) {
            (_, true) => rat(r.gen_range(0..=1), (from.len() as i64).max(1)),
            (true, _) => int(r.gen_range(-1..=2)),
            (false, _) => rat(r.gen_range(-1..=3), r.gen_range(1..=3)),
        })
        .collect();
    for (c, g) in weights.iter().zip(from) {
        for (vi, gi) in v.iter_mut().zip(g) {
            *vi += c * gi;
        }
    }
    v
}

fn scalar(r: &mut TestRng, tag: SemiringTag) -> Rat {
    if tag.integral() {
        int(r.gen_range(-1..=2))
    } else {
        rat(r.gen_range(-1..=3), r.gen_range(1..=3))
    }
}

/// Checks on `rounds` random equivalent pairs that a tuple `(o, (y_a))` is
/// in `F_E X ∩ F_S Y` exactly when it is in `F_S(X ∩ Y)`, with `X` the pair
/// closure over the completion and `Y` the carrier of the product. Returns
/// the number of tuples inside.
pub fn cubic_intersection_identity(r: &mut TestRng, tag: SemiringTag, rounds: usize) -> Result<usize, String> {
    let mut positives = 0;
    for _ in 0..rounds {
        let Pair { a1, x1, a2, x2 } = equivalent_pair(r, tag, 3, 2);
        let z = pair_submodule(&a1, &x1, &a2, &x2).map_err(|e| e.to_string())?;
        let (n1, n2) = (z.n1, z.n2);
        let w = restricted_generators(tag, &z.generators, n1, n2);
        for _ in 0..10 {
            let o = scalar(r, tag);
            let ys: Vec<RVec> = (0..2).map(|_| sample(r, tag, &z.generators, &w, n1 + n2)).collect();
            let in_fe_x = ys.iter().all(|y| in_completion_span(tag, &z.generators, y));
            let in_fs_y = tag.contains_scalar(&o) && ys.iter().all(|y| in_product_carrier(tag, y, n1));
            let in_fs_meet = tag.contains_scalar(&o) && ys.iter().all(|y| semiring_span_contains(tag, &w, y));
            if (in_fe_x && in_fs_y) != in_fs_meet {
                return Err(format!("{tag}: o = {o}, y = {ys:?}, w = {w:?}"));
            }
            positives += usize::from(in_fs_meet);
        }
    }
    Ok(positives)
}

/// `u > 0`, `<g, u> <= 1` on generators, `out_j + Σ_a <M_a e_j, u> <= u_j`,
/// and the pyramid of `u` contains `X` and is mapped into its own `Ĝ`.
pub fn pyramid_certificate_holds(x_set: &PcaPolytope, c: &LinearCoalgebra, u: &[Rat]) -> bool {
    let y = PcaPolytope::pyramid(u);
    u.iter().all(Signed::is_positive)
        && x_set.generators.iter().all(|g| dot(g, u) <= Rat::one())
        && (0..c.n()).all(|j| {
            let spent: Rat = c.trans.iter().map(|m| dot(&m.col(j), u)).sum();
            &c.out[j] + spent <= u[j]
        })
        && x_set.is_subset_of(&y)
        && is_ghat_coalgebra(&y, &y, c)
}

/// Identity and composition laws of `Ĝ` on random convex maps, and that
/// `Ĝf` carries `ĜX` into `Ĝ(fX)`.
pub fn ghat_functor_laws(r: &mut TestRng, rounds: usize) -> Result<(), String> {
    for _ in 0..rounds {
        let n = r.gen_range(1..=3);
        let x_set = PcaPolytope::simplex(n);
        let e = random_ghat_element(r, &x_set, 2);
        if ghat_apply(&RMat::identity(n), &e) != e {
            return Err(format!("identity moves {e:?}"));
        }
        let (m, l) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let f = convex_map(r, m, n);
        let g = convex_map(r, l, m);
        if ghat_apply(&g.mul(&f), &e) != ghat_apply(&g, &ghat_apply(&f, &e)) {
            return Err(format!("composition fails on {e:?}"));
        }
        let zero = ghat_apply(&RMat::zeros(m, n), &e);
        if e.o <= Rat::one() && !ghat_member(&PcaPolytope::simplex(m), &zero) {
            return Err(format!("zero map image {zero:?} is not a member"));
        }
        if ghat_member(&x_set, &e) && !ghat_member(&image_polytope(&f, &x_set), &ghat_apply(&f, &e)) {
            return Err(format!("image of {e:?} leaves Ĝ(fX)"));
        }
    }
    Ok(())
}

/// `X1 ⊆ X2` implies `ĜX1 ⊆ ĜX2`, with `X1` an intersection inside `X2`.
pub fn ghat_monotonicity(r: &mut TestRng, rounds: usize) -> Result<(), String> {
    for _ in 0..rounds {
        let n = r.gen_range(1..=3);
        let big = random_pca_polytope(r, n);
        let small = big.intersect(&random_pca_polytope(r, n));
        if !small.is_subset_of(&big) {
            return Err(format!("{small:?} is not inside {big:?}"));
        }
        for _ in 0..3 {
            let e = random_ghat_element(r, &small, 2);
            if ghat_member(&small, &e) && !ghat_member(&big, &e) {
                return Err(format!("{e:?} is in Ĝ{small:?} but not in Ĝ{big:?}"));
            }
        }
    }
    Ok(())
}

/// Preimages under `Ĝf` for random surjections `f: Δ^n -> fΔ^n` and
/// members of `Ĝ(fΔ^n)`, until `wanted` have been found.
pub fn ghat_preimages(r: &mut TestRng, wanted: usize) -> Result<(), String> {
    let mut found = 0;
    while found < wanted {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=3);
        let x_set = PcaPolytope::simplex(n);
        let f = convex_map(r, m, n);
        let y_set = image_polytope(&f, &x_set);
        if y_set.generators.is_empty() {
            continue;
        }
        let letters = r.gen_range(1..=2);
        let e = random_ghat_element(r, &y_set, letters);
        let pre = ghat_preimage(&f, &x_set, &y_set, &e);
        if !ghat_member(&y_set, &e) {
            if pre.is_some() {
                return Err(format!("preimage returned for the non-member {e:?}"));
            }
            continue;
        }
        let Some(pre) = pre else {
            return Err(format!("no preimage for {e:?} under {f:?}"));
        };
        if !ghat_member(&x_set, &pre) || ghat_apply(&f, &pre) != e {
            return Err(format!("{pre:?} is not a preimage of {e:?}"));
        }
        found += 1;
    }
    Ok(())
}

/// Membership by the definition: `φ(a) = Σ_g λ_{a,g} g` with `λ >= 0` and
/// `o + Σ λ <= 1`, as one joint linear program.
pub fn ghat_member_by_definition(x_set: &PcaPolytope, e: &GhatElement) -> bool {
    let slack = Rat::one() - &e.o;
    if e.o.is_negative() || slack.is_negative() {
        return false;
    }
    let (k, n, letters) = (x_set.generators.len(), x_set.dim, e.phi.len());
    let vars = letters * k + 1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in 0..letters {
        for i in 0..n {
            let mut row = vec![Rat::zero(); vars];
            for (j, g) in x_set.generators.iter().enumerate() {
                row[a * k + j] = g[i].clone();
            }
            rows.push(row);
            rhs.push(e.phi[a][i].clone());
        }
    }
    rows.push(vec![Rat::one(); vars]);
    rhs.push(slack);
    matches!(minimize(&vec![Rat::zero(); vars], &rows, &rhs), LpOutcome::Optimal { .. })
}

/// The gauge form, the single-scalar decomposition and the definition
/// agree. Returns the number of members and non-members seen.
pub fn ghat_membership_forms(r: &mut TestRng, rounds: usize) -> Result<(usize, usize), String> {
    let (mut yes, mut no) = (0, 0);
    for _ in 0..rounds {
        let n = r.gen_range(1..=3);
        let x_set = random_pca_polytope(r, n);
        let e = if r.gen_bool(0.5) {
            random_ghat_element(r, &PcaPolytope::simplex(n), 2)
        } else {
            random_ghat_element(r, &x_set, 2)
        };
        let by_gauge = ghat_member(&x_set, &e);
        let single = ghat_decompose(&x_set, &e).is_some_and(|parts| {
            let total: Rat = parts.iter().map(|(p, _)| p).sum::<Rat>() + &e.o;
            total <= Rat::one()
                && parts.iter().zip(&e.phi).all(|((p, x), v)| {
                    !p.is_negative() && (p.is_zero() || x_set.contains(x)) && scale(p, x) == *v
                })
        });
        if by_gauge != ghat_member_by_definition(&x_set, &e) || by_gauge != single {
            return Err(format!("membership forms disagree on {e:?} over {x_set:?}"));
        }
        if by_gauge {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok((yes, no))
}

/// `Ĝf ∘ c = g ∘ f` on basis vectors for the reduction of random PCA
/// automata. Returns how many reductions removed something.
pub fn reduction_squares(r: &mut TestRng, rounds: usize) -> Result<usize, String> {
    let mut nontrivial = 0;
    for _ in 0..rounds {
        let n = r.gen_range(1..=4);
        let letters = r.gen_range(1..=2);
        let aut = random_automaton(r, SemiringTag::Pca, n, letters);
        let red = reduce_invariant_set(&aut).map_err(|e| e.to_string())?;
        let c = LinearCoalgebra::from(&aut);
        let g = LinearCoalgebra::from(&red.quotient);
        for k in 0..n {
            let e = unit_vec(n, k);
            if ghat_apply(&red.f, &c.apply(&e)) != g.apply(&red.f.mul_vec(&e)) {
                return Err(format!("square fails at e_{k} for {aut:?}"));
            }
        }
        if red.quotient.n() + red.removed.len() != n || !invariant_zero_set(&g).is_empty() {
            return Err(format!("reduction of {aut:?} is incomplete"));
        }
        nontrivial += usize::from(!red.removed.is_empty());
    }
    Ok(nontrivial)
}

/// Nonnegative `rows x cols` matrix whose columns are subdistributions.
pub fn convex_map(r: &mut TestRng, rows: usize, cols: usize) -> RMat {
    let cols: Vec<RVec> = (0..cols).map(|_| subdistribution(r, rows, &Rat::one())).collect();
    RMat::from_cols(&cols, rows)
}

/// The image of `x_set` under `f`, as a PCA.
pub fn image_polytope(f: &RMat, x_set: &PcaPolytope) -> PcaPolytope {
    let gens = x_set.generators.iter().map(|g| f.mul_vec(g)).filter(|g| g.iter().any(|x| !x.is_zero())).collect();
    PcaPolytope::new(f.rows(), gens)
}

/// Pyramid certificates for reduced random PCA coalgebras on simplices,
/// until `wanted` have been checked.
pub fn pyramid_certificates(r: &mut TestRng, wanted: usize) -> Result<(), String> {
    let mut done = 0;
    while done < wanted {
        let n = r.gen_range(1..=3);
        let letters = r.gen_range(1..=2);
        let aut = random_automaton(r, SemiringTag::Pca, n, letters);
        let red = reduce_invariant_set(&aut).map_err(|e| e.to_string())?;
        let k = red.quotient.n();
        if k == 0 {
            continue;
        }
        let c = LinearCoalgebra::from(&red.quotient);
        let x_set = PcaPolytope::simplex(k);
        let cert = pyramid_extension(&x_set, &c).map_err(|e| format!("{:?}: {e}", red.quotient))?;
        if !pyramid_certificate_holds(&x_set, &c, &cert.u) {
            return Err(format!("u = {:?} fails for {:?}", cert.u, red.quotient));
        }
        done += 1;
    }
    Ok(())
}
