//! The theorem-verification harness: each checkable claim about a family
//! matrix becomes an operation that produces a verdict plus witnesses —
//! height profiles, 1-genericity, linear type, normal torsionfreeness
//! evidence, and the normality dichotomy.

use crate::families::FamilyKind;
use crate::field::Field;
use crate::groebner::{Budgets, GbError};
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::minors::minors_ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::report::{run_check, CheckOutcome, CheckResult};
use crate::ring::PolyRing;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Heights of all minor ideals `I_t`, checked against the bound
/// `ht(I_t) >= m-t+2` for t below the maximal size, and `ht(I_{m-1}) = 2`
/// exactly. For semi-Hankel the profile starts at t = 2: there `I_1` is
/// the whole irrelevant ideal, whose height n cannot meet the t = 1 bound
/// m+1 when n = m, so t = 1 carries no information about the family.
pub fn check_height_profile<F: Field>(
    mat: &PolyMatrix<F>,
    kind: FamilyKind,
    budgets: &Budgets,
) -> CheckResult {
    let m = mat.nrows();
    assert_eq!(mat.ncols() + 1, m, "family matrices are m x (m-1)");
    run_check("heights", || {
        let t_start = match kind {
            FamilyKind::SemiHankel => 2,
            _ => 1,
        };
        let mut rows = Vec::new();
        let mut pass = true;
        for t in t_start..=m - 1 {
            let ht = minors_ideal(mat, t).height(budgets)?;
            let row = if t <= m - 2 {
                let bound = (m - t + 2) as i64;
                let ok = ht >= bound;
                pass &= ok;
                json!({ "t": t, "height": ht, "bound": bound, "meets_bound": ok })
            } else {
                let ok = ht == 2;
                pass &= ok;
                json!({ "t": t, "height": ht, "required": 2, "meets_bound": ok })
            };
            rows.push(row);
        }
        let data = json!({ "profile": rows, "m": m, "n": mat.ring().nvars() });
        Ok(if pass {
            CheckOutcome::passing(data)
        } else {
            CheckOutcome::failing(data, vec![])
        })
    })
}

/// How 1-genericity is decided.
#[derive(Debug, Clone, Copy)]
pub enum OneGenericMode {
    /// Saturate the bilinear system of generalized entries; exact.
    Certified,
    /// Sample nonzero vector pairs; counterexamples are exact, a pass is
    /// only probabilistic evidence.
    Randomized { trials: u32, seed: u64 },
}

/// Whether the matrix of linear forms is 1-generic (no zero generalized
/// entry u·M·v with u, v nonzero over the algebraic closure). Verdict
/// "pass" means 1-generic; a failing verdict carries a witness when one
/// is explicit (a zero entry yields unit vectors).
pub fn check_one_generic<F: Field>(
    mat: &PolyMatrix<F>,
    mode: OneGenericMode,
    budgets: &Budgets,
) -> CheckResult {
    run_check("one_generic", || one_generic_body(mat, mode, budgets))
}

fn one_generic_body<F: Field>(
    mat: &PolyMatrix<F>,
    mode: OneGenericMode,
    budgets: &Budgets,
) -> Result<CheckOutcome, GbError> {
    let (rows, cols) = (mat.nrows(), mat.ncols());
    for i in 0..rows {
        for j in 0..cols {
            let e = mat.entry(i, j);
            assert!(
                e.is_zero() || (e.degree() == Some(1) && e.is_homogeneous()),
                "entries must be linear forms"
            );
            if e.is_zero() {
                // a zero entry is a zero generalized entry: certified
                return Ok(CheckOutcome::failing(
                    json!({ "one_generic": false, "mode": "certified" }),
                    vec![format!(
                        "unit vectors u = e{}, v = e{} select the zero entry ({}, {})",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )],
                ));
            }
        }
    }
    match mode {
        OneGenericMode::Certified => match one_generic_certified(mat, budgets) {
            Ok(generic) => Ok(if generic {
                CheckOutcome::passing(json!({ "one_generic": true, "mode": "certified" }))
            } else {
                CheckOutcome::failing(
                    json!({
                        "one_generic": false,
                        "mode": "certified",
                        "note": "nontrivial generalized zero entry exists over the closure; no explicit vector pair extracted",
                    }),
                    vec![],
                )
            }),
            Err(GbError::Budget(msg)) => {
                // downgrade, explicitly, rather than dying
                let mut out = one_generic_randomized(mat, 1000, 1);
                out.data["downgraded_from_certified"] = json!(msg);
                Ok(out)
            }
        },
        OneGenericMode::Randomized { trials, seed } => {
            Ok(one_generic_randomized(mat, trials, seed))
        }
    }
}

/// Exact decision: form the bilinear system of all generalized entries in
/// auxiliary u, v variables, saturate away the trivial loci u = 0 and
/// v = 0, and test for the unit ideal.
fn one_generic_certified<F: Field>(
    mat: &PolyMatrix<F>,
    budgets: &Budgets,
) -> Result<bool, GbError> {
    let field = mat.ring().field();
    let (rows, cols) = (mat.nrows(), mat.ncols());
    let n = mat.ring().nvars();
    let names: Vec<String> = (1..=rows)
        .map(|i| format!("U{i}"))
        .chain((1..=cols).map(|j| format!("V{j}")))
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let uv = PolyRing::new(field.clone(), &refs);
    // one bilinear equation per ambient variable X_l
    let mut eqs = vec![uv.zero(); n];
    for i in 0..rows {
        for j in 0..cols {
            let uivj = uv.var(i).mul(field, &uv.var(rows + j));
            for (mono, c) in mat.entry(i, j).terms() {
                let l = mono.support().next().expect("linear entry");
                eqs[l] = eqs[l].add(field, &uivj.scale(field, c));
            }
        }
    }
    let bilinear = Ideal::new(uv.clone(), eqs);
    let u_ideal = Ideal::new(uv.clone(), (0..rows).map(|i| uv.var(i)).collect());
    let v_ideal = Ideal::new(
        uv.clone(),
        (0..cols).map(|j| uv.var(rows + j)).collect(),
    );
    let no_u = bilinear.saturation_exact(&u_ideal, budgets)?;
    let no_uv = no_u.saturation_exact(&v_ideal, budgets)?;
    no_uv.is_unit(budgets)
}

fn one_generic_randomized<F: Field>(
    mat: &PolyMatrix<F>,
    trials: u32,
    seed: u64,
) -> CheckOutcome {
    let ring = mat.ring();
    let field = ring.field();
    let (rows, cols) = (mat.nrows(), mat.ncols());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero_vector = |len: usize, rng: &mut ChaCha8Rng| -> Vec<F::Elem> {
        loop {
            let v: Vec<F::Elem> = (0..len).map(|_| field.random(rng)).collect();
            if v.iter().any(|c| !field.is_zero(c)) {
                return v;
            }
        }
    };
    for _ in 0..trials {
        let u = nonzero_vector(rows, &mut rng);
        let v = nonzero_vector(cols, &mut rng);
        let mut form = ring.zero();
        for i in 0..rows {
            for j in 0..cols {
                let c = field.mul(&u[i], &v[j]);
                form = form.add(field, &mat.entry(i, j).scale(field, &c));
            }
        }
        if form.is_zero() {
            let fmt_vec = |w: &[F::Elem]| {
                let parts: Vec<String> = w.iter().map(|c| field.format(c)).collect();
                format!("({})", parts.join(", "))
            };
            return CheckOutcome::failing(
                json!({ "one_generic": false, "mode": "randomized", "trials": trials }),
                vec![format!("u = {}, v = {}", fmt_vec(&u), fmt_vec(&v))],
            );
        }
    }
    CheckOutcome {
        pass: true,
        data: json!({
            "one_generic": true,
            "mode": "randomized",
            "trials": trials,
            "note": "probabilistic evidence only; no counterexample found",
        }),
        witnesses: Vec::new(),
    }
}

/// Rees ideal of the signed-minor ideal: eliminate t from
/// (Y_i - t·Δ_i) ⊂ k[t,X,Y], under the given elimination order.
pub(crate) fn rees_ideal<F: Field>(
    mat: &PolyMatrix<F>,
    order: MonomialOrder,
    budgets: &Budgets,
) -> Result<Ideal<F>, GbError> {
    crate::cremona::graph_ideal_with(mat.ring(), &mat.signed_maximal_minors(), order, budgets)
}

/// Symmetric-algebra ideal: the entries of the row vector (Y_1..Y_m)·M,
/// in k[X,Y].
pub(crate) fn symmetric_ideal<F: Field>(mat: &PolyMatrix<F>) -> Ideal<F> {
    let ring = mat.ring();
    let field = ring.field();
    let m = mat.nrows();
    let xy = ring.with_y_block(m);
    let gens: Vec<Polynomial<F>> = (0..mat.ncols())
        .map(|j| {
            let mut acc = xy.zero();
            for i in 0..m {
                let y = xy.var(ring.nvars() + i);
                acc = acc.add(field, &y.mul(field, &ring.map_into(&xy, mat.entry(i, j))));
            }
            acc
        })
        .collect();
    Ideal::new(xy, gens)
}

/// Whether the signed-minor ideal is of linear type: the Rees ideal must
/// equal the symmetric-algebra ideal (exact reduced-GB equality). A
/// failure carries a Rees element outside the symmetric-algebra ideal.
pub fn check_linear_type<F: Field>(mat: &PolyMatrix<F>, budgets: &Budgets) -> CheckResult {
    run_check("linear_type", || {
        let m = mat.nrows();
        assert_eq!(mat.ncols() + 1, m, "family matrices are m x (m-1)");
        // Hilbert–Burch setting: the matrix presents a height-2 minor ideal
        let hb_height = minors_ideal(mat, m - 1).height(budgets)?;
        let rees = rees_ideal(
            mat,
            MonomialOrder::Block { first_block: 1 },
            budgets,
        )?;
        let sym = symmetric_ideal(mat);
        let equal = rees.equals(&sym, budgets)?;
        let data = json!({
            "hilbert_burch_height": hb_height,
            "rees_basis_size": rees.gens().len(),
            "symmetric_basis_size": sym.gb(MonomialOrder::DegRevLex, budgets)?.elements.len(),
        });
        if equal {
            Ok(CheckOutcome::passing(data))
        } else {
            let mut witnesses = Vec::new();
            for g in rees.gens() {
                if !sym.contains(g, budgets)? {
                    witnesses.push(format!(
                        "{} lies in the Rees ideal but not in the symmetric-algebra ideal",
                        g.display(rees.ring())
                    ));
                    break;
                }
            }
            Ok(CheckOutcome::failing(data, witnesses))
        }
    })
}

/// Saturation-stability of ordinary powers with respect to the irrelevant
/// ideal and the singular-locus minor ideal, for r = 2..r_max. Evidence
/// of normal torsionfreeness on the tested loci, not a full certificate.
pub fn check_normally_torsionfree<F: Field>(
    mat: &PolyMatrix<F>,
    r_max: u32,
    budgets: &Budgets,
) -> CheckResult {
    run_check("ntf", || {
        let m = mat.nrows();
        assert!(m >= 3, "needs the singular-locus ideal I_{{m-2}}, so m >= 3");
        let ideal = minors_ideal(mat, m - 1);
        let singular = minors_ideal(mat, m - 2);
        let irrelevant = Ideal::irrelevant(mat.ring());
        let mut rows = Vec::new();
        let mut witnesses = Vec::new();
        let mut pass = true;
        for r in 2..=r_max {
            let power = ideal.power(r);
            let sat_x = power.saturation(&irrelevant, budgets)?;
            let stable_x = sat_x.equals(&power, budgets)?;
            if !stable_x && witnesses.is_empty() {
                for g in sat_x.gens() {
                    if !power.contains(g, budgets)? {
                        witnesses.push(format!(
                            "degree-{} element of the (X)-saturation of I^{} outside I^{}: {}",
                            g.degree().unwrap_or(0),
                            r,
                            r,
                            g.display(mat.ring())
                        ));
                        break;
                    }
                }
            }
            let sat_sing = power.saturation(&singular, budgets)?;
            let stable_sing = sat_sing.equals(&power, budgets)?;
            pass &= stable_x && stable_sing;
            rows.push(json!({
                "r": r,
                "sat_irrelevant_stable": stable_x,
                "sat_singular_stable": stable_sing,
            }));
        }
        let data = json!({
            "rows": rows,
            "r_max": r_max,
            "note": "saturation-stability evidence on the tested loci, not a primary-decomposition certificate",
        });
        Ok(if pass {
            CheckOutcome::passing(data)
        } else {
            CheckOutcome::failing(data, witnesses)
        })
    })
}

/// The normality dichotomy. Branch A (sub-Hankel, n = m+1): certify
/// non-normality by the witness membership Δ_{n-2} ∈ P², with
/// P = (X_{n-2}, X_{n-1}, X_n). Branch B (all other instances): normality
/// evidence via the singular-locus codimension bound
/// ht(I_{m-2} + I) - ht(I) >= 2. The verdict records which branch ran;
/// branch B is evidence for the Serre condition (R_1), not a certificate.
pub fn check_normality<F: Field>(
    mat: &PolyMatrix<F>,
    kind: FamilyKind,
    budgets: &Budgets,
) -> CheckResult {
    run_check("normality", || {
        let m = mat.nrows();
        let n = mat.ring().nvars();
        if kind == FamilyKind::SubHankel && n == m + 1 {
            // non-normal side of the dichotomy: verify the witness
            let ring = mat.ring();
            let p_gens: Vec<Polynomial<F>> =
                (n - 3..n).map(|l| ring.var(l)).collect();
            let p_ideal = Ideal::new(ring.clone(), p_gens);
            let delta = mat.signed_maximal_minors().swap_remove(n - 3);
            let member = p_ideal.power(2).contains(&delta, budgets)?;
            let names: Vec<&str> = (n - 3..n)
                .map(|l| ring.var_name(l))
                .collect();
            let data = json!({
                "branch": "A (non-normality witness)",
                "normal": false,
                "witness_minor": format!("Delta_{}", n - 2),
                "prime": format!("({})", names.join(", ")),
                "membership_verified": member,
            });
            Ok(if member {
                CheckOutcome {
                    pass: true,
                    data,
                    witnesses: vec![format!(
                        "Delta_{} = {} lies in ({})^2",
                        n - 2,
                        delta.display(ring),
                        names.join(", ")
                    )],
                }
            } else {
                CheckOutcome::failing(data, vec![])
            })
        } else {
            assert!(m >= 3, "normality evidence needs I_{{m-2}}, so m >= 3");
            let ideal = minors_ideal(mat, m - 1);
            let singular = minors_ideal(mat, m - 2);
            let h_i = ideal.height(budgets)?;
            let h_sum = singular.sum(&ideal).height(budgets)?;
            let ok = h_sum - h_i >= 2;
            let data = json!({
                "branch": "B (normality evidence)",
                "normal": ok,
                "height_ideal": h_i,
                "height_singular_plus_ideal": h_sum,
                "singular_codim_in_quotient": h_sum - h_i,
                "note": "codimension >= 2 evidence for (R_1); S_2 not re-proved",
            });
            Ok(if ok {
                CheckOutcome::passing(data)
            } else {
                CheckOutcome::failing(data, vec![])
            })
        }
    })
}
