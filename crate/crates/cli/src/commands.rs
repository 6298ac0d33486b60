//! Command implementations. Every command returns a deterministic report
//! value plus the process exit code: `0` all checks pass, `1` a mathematical
//! check failed (the report carries the witness), `2` never reaches here
//! (validation errors are raised as [`ManifestError`]).

use serde_json::{json, Map, Value};

use eala_core::autmorph::{
    apply_e, conjugacy_construct, elementary_lift_contract, exp_ad, gamma_equivariance_check,
    kernel_automorphism, lift_grading_preserving, verify_automorphism, AutomorphismRep,
    CartanCandidate, Character, ConjugacyError,
};
use eala_core::eala::{check_eala_axioms, root_decomposition, sample_ideal_dichotomy};
use eala_core::glie::{GradedLieAlgebra, Window};
use eala_core::multiloop::{
    check_lie_torus, descent_matches_eigenbasis, gamma_action, gamma_fixed_points, root_grading,
    untwisted,
};
use eala_core::sampling::DetRng;

use crate::manifest::{self, Manifest, ManifestError};
use crate::report::{
    base_report, psi_value, scalar_string, verdict_value,
};

pub struct Ctx {
    pub manifest: Manifest,
    pub digest: String,
    pub window_flag: Option<i64>,
    pub samples_flag: Option<usize>,
    pub seed_flag: Option<u64>,
}

impl Ctx {
    pub fn window(&self) -> i64 {
        self.window_flag.or(self.manifest.window).unwrap_or(3)
    }

    pub fn samples(&self, default: usize) -> usize {
        self.samples_flag.or(self.manifest.samples).unwrap_or(default)
    }

    pub fn seed(&self) -> u64 {
        self.seed_flag.or(self.manifest.seed).unwrap_or(0)
    }
}

fn err(pointer: &str, message: impl std::fmt::Display) -> ManifestError {
    ManifestError { pointer: pointer.into(), message: format!("{}", message) }
}

pub fn cmd_build(ctx: &Ctx) -> Result<(Value, u8), ManifestError> {
    let e = manifest::build_eala(&ctx.manifest)?;
    let window = Window::new(e.ml.nullity, ctx.window());
    let mut report = base_report("build", &ctx.digest, ctx.window(), ctx.seed());
    report.insert("nullity".into(), json!(e.ml.nullity));
    report.insert("orders".into(), json!(e.ml.orders));
    report.insert("xi_generators".into(), json!(e.ml.xi_generators()));
    report.insert(
        "gamma_order".into(),
        json!(e.ml.orders.iter().map(|&m| m as u64).product::<u64>()),
    );
    report.insert("cartan_dim".into(), json!(e.cartan_dim()));
    report.insert("d_dim".into(), json!(e.da.dim()));

    let mut dims = Map::new();
    for deg in window.degrees() {
        dims.insert(
            format!("{}", deg),
            json!({
                "L": e.dim_l_at(&deg),
                "C": e.da.dim_c_at(&deg),
                "D": e.da.dim_d_at(&deg),
            }),
        );
    }
    report.insert("dims".into(), Value::Object(dims));

    let mut eigen = Map::new();
    for residue in eala_core::multiloop::residues(&e.ml.orders) {
        let basis = e.ml.eigenbasis(&residue);
        let rendered: Vec<String> = basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(&i, c)| format!("({})*{}", scalar_string(c), e.ml.base.label(i)))
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        eigen.insert(format!("{:?}", residue), json!(rendered));
    }
    report.insert("eigenbasis".into(), Value::Object(eigen));

    match root_grading(&e.ml, window) {
        Ok(g) => {
            report.insert(
                "delta".into(),
                json!({ "series": format!("{}", g.datum.series), "rank": g.datum.rank }),
            );
        }
        Err(e) => {
            report.insert("delta".into(), json!({ "error": format!("{}", e) }));
        }
    }
    Ok((Value::Object(report), 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    LieTorus,
    Eala,
    Ideals,
    Descent,
}

impl CheckKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lietorus" => Some(CheckKind::LieTorus),
            "eala" => Some(CheckKind::Eala),
            "ideals" => Some(CheckKind::Ideals),
            "descent" => Some(CheckKind::Descent),
            _ => None,
        }
    }
}

pub fn cmd_check(ctx: &Ctx, which: CheckKind) -> Result<(Value, u8), ManifestError> {
    match which {
        CheckKind::LieTorus => {
            let ml = manifest::build_loop(&ctx.manifest)?;
            let window = Window::new(ml.nullity, ctx.window());
            let r = check_lie_torus(&ml, window);
            let mut report = base_report("check lietorus", &ctx.digest, ctx.window(), ctx.seed());
            report.insert(
                "axioms".into(),
                json!({
                    "LT1": verdict_value(&r.lt1),
                    "LT2": verdict_value(&r.lt2),
                    "LT3": verdict_value(&r.lt3),
                    "LT4": verdict_value(&r.lt4),
                }),
            );
            if let Some((series, rank)) = r.series {
                report.insert(
                    "delta".into(),
                    json!({ "series": format!("{}", series), "rank": rank }),
                );
            }
            report.insert("g0_simple".into(), verdict_value(&r.g0_simple));
            let code = if r.all_pass() { 0 } else { 1 };
            Ok((Value::Object(report), code))
        }
        CheckKind::Eala => {
            let e = manifest::build_eala(&ctx.manifest)?;
            let window = Window::new(e.ml.nullity, ctx.window());
            let mut rng = DetRng::new(ctx.seed());
            let r = check_eala_axioms(&e, window, ctx.samples(20), &mut rng);
            let mut report = base_report("check eala", &ctx.digest, ctx.window(), ctx.seed());
            report.insert(
                "axioms".into(),
                json!({
                    "EA1": verdict_value(&r.ea1),
                    "EA2": verdict_value(&r.ea2),
                    "EA3": verdict_value(&r.ea3),
                    "EA4": verdict_value(&r.ea4),
                    "EA5": verdict_value(&r.ea5),
                }),
            );
            report.insert("nullity".into(), json!(r.nullity));
            let mut roots = Vec::new();
            if let Ok(dec) = root_decomposition(&e, window) {
                if let Ok(classes) = eala_core::eala::classify_roots(&e, &dec) {
                    for (i, root) in dec.roots.iter().enumerate() {
                        roots.push(json!({
                            "alpha": root.weight.iter().map(|r| format!("{}", r)).collect::<Vec<_>>(),
                            "degree": root.degree.0,
                            "dim": root.dim(),
                            "norm": scalar_string(&classes.norms[i]),
                            "isotropic": classes.isotropic.contains(&i),
                        }));
                    }
                }
            }
            report.insert("roots".into(), Value::Array(roots));
            if let Some(core) = &r.core {
                report.insert(
                    "core".into(),
                    json!({
                        "matches_L_plus_C": core.matches_l_plus_c,
                        "centralizer_inside": core.centralizer_inside,
                        "radical_is_C": core.radical_is_c,
                        "window_dim": core.dim,
                        "closure_complete": core.complete,
                    }),
                );
            }
            let code = if r.all_pass() { 0 } else { 1 };
            Ok((Value::Object(report), code))
        }
        CheckKind::Ideals => {
            let e = manifest::build_eala(&ctx.manifest)?;
            let window = Window::new(e.ml.nullity, ctx.window());
            let samples = ctx.samples(50);
            let mut rng = DetRng::new(ctx.seed());
            let mut report = base_report("check ideals", &ctx.digest, ctx.window(), ctx.seed());
            report.insert("samples".into(), json!(samples));
            match sample_ideal_dichotomy(&e, window, samples, &mut rng) {
                Ok((in_c, with_core)) => {
                    report.insert(
                        "dichotomy".into(),
                        json!({ "SubsetOfC": in_c, "ContainsCore": with_core, "Inconclusive": 0 }),
                    );
                    Ok((Value::Object(report), 0))
                }
                Err(witness) => {
                    report.insert(
                        "dichotomy".into(),
                        json!({ "inconclusive_witness": crate::report::element_value(&e, &witness) }),
                    );
                    Ok((Value::Object(report), 1))
                }
            }
        }
        CheckKind::Descent => {
            let ml = manifest::build_loop(&ctx.manifest)?;
            let window = Window::new(ml.nullity, ctx.window());
            let ga = gamma_action(&ml);
            let mut degrees = Map::new();
            for (deg, fixed) in gamma_fixed_points(&ga, window) {
                let eigen = ml.dim_at(&deg);
                degrees.insert(
                    format!("{}", deg),
                    json!({ "fixed": fixed.len(), "eigen": eigen }),
                );
            }
            let matches = descent_matches_eigenbasis(&ml, window);
            let mut report = base_report("check descent", &ctx.digest, ctx.window(), ctx.seed());
            report.insert("degrees".into(), Value::Object(degrees));
            match matches {
                Ok(()) => {
                    report.insert("match".into(), json!(true));
                    Ok((Value::Object(report), 0))
                }
                Err(deg) => {
                    report.insert("match".into(), json!(false));
                    report.insert("witness_degree".into(), json!(deg.0));
                    Ok((Value::Object(report), 1))
                }
            }
        }
    }
}

pub fn cmd_roots(ctx: &Ctx) -> Result<(Value, u8), ManifestError> {
    let base = manifest::build_base(&ctx.manifest)?;
    let mut report = base_report("roots", &ctx.digest, ctx.window(), ctx.seed());
    report.insert("series".into(), json!(ctx.manifest.base.series));
    report.insert("rank".into(), json!(base.rank()));
    report.insert("roots".into(), json!(base.datum.roots));
    let mut constants = Map::new();
    for i in 0..base.dim {
        for j in 0..base.dim {
            let out = base.bracket_slots(i, j);
            if out.is_empty() {
                continue;
            }
            let rendered: Vec<String> = out
                .iter()
                .map(|(&k, c)| format!("({})*{}", scalar_string(c), base.label(k)))
                .collect();
            constants.insert(
                format!("[{},{}]", base.label(i), base.label(j)),
                json!(rendered.join("+")),
            );
        }
    }
    report.insert("constants".into(), Value::Object(constants));
    report.insert(
        "sign_convention".into(),
        json!("extraspecial pairs positive over the height-lexicographic positive root order"),
    );
    Ok((Value::Object(report), 0))
}

pub fn cmd_lift(ctx: &Ctx) -> Result<(Value, u8), ManifestError> {
    let section = ctx
        .manifest
        .lift
        .clone()
        .ok_or_else(|| err("/lift", "missing lift section"))?;
    let mut report = base_report("lift", &ctx.digest, ctx.window(), ctx.seed());
    report.insert("kind".into(), json!(section.kind));
    match section.kind.as_str() {
        "elementary" => {
            let e = manifest::build_eala(&ctx.manifest)?;
            let window = Window::new(e.ml.nullity, ctx.window());
            let terms = section.x.ok_or_else(|| err("/lift/x", "missing element"))?;
            let x_e = manifest::parse_element(&terms, &e, "/lift/x")?;
            let x = e.l_component(&x_e);
            if x_e != e.embed_l(&x) {
                return Err(err("/lift/x", "elementary generators must lie in L"));
            }
            match exp_ad(&e.ml, &x) {
                Ok(f) => {
                    let contract = elementary_lift_contract(&e, &x, window);
                    let mut rng = DetRng::new(ctx.seed());
                    let verdict =
                        verify_automorphism(&e, &f, window, ctx.samples(100), &mut rng);
                    let pass = contract.is_ok() && verdict.pass;
                    report.insert(
                        "contract".into(),
                        match &contract {
                            Ok(()) => json!({ "pass": true }),
                            Err(w) => json!({ "pass": false, "witness": w }),
                        },
                    );
                    report.insert("verdict".into(), verdict_value(&verdict));
                    Ok((Value::Object(report), if pass { 0 } else { 1 }))
                }
                Err(e) => {
                    report.insert("error".into(), json!(format!("{}", e)));
                    Ok((Value::Object(report), 1))
                }
            }
        }
        "kernel" => {
            let e = manifest::build_eala(&ctx.manifest)?;
            let window = Window::new(e.ml.nullity, ctx.window());
            let entries = section.psi.ok_or_else(|| err("/lift/psi", "missing psi table"))?;
            let psi = manifest::parse_psi(&entries, &e, "/lift/psi")?;
            match kernel_automorphism(&e, psi.clone()) {
                Ok(f) => {
                    let mut rng = DetRng::new(ctx.seed());
                    let verdict =
                        verify_automorphism(&e, &f, window, ctx.samples(100), &mut rng);
                    report.insert("psi".into(), psi_value(&psi));
                    report.insert("verdict".into(), verdict_value(&verdict));
                    Ok((Value::Object(report), if verdict.pass { 0 } else { 1 }))
                }
                Err(e) => {
                    report.insert("error".into(), json!(format!("{}", e)));
                    Ok((Value::Object(report), 1))
                }
            }
        }
        "gamma_equivariance" => {
            let twisted = manifest::build_loop(&ctx.manifest)?;
            let da = manifest::build_derivations(&ctx.manifest, &twisted)?;
            let tau = manifest::build_tau(&ctx.manifest, &da)?;
            let cover = untwisted(&twisted.base, twisted.nullity);
            let e_s = eala_core::eala::assemble_eala(cover, da, tau)
                .map_err(|e| err("/tau", e))?;
            let window = Window::new(twisted.nullity, ctx.window());
            let mut rng = DetRng::new(ctx.seed());
            let verdict =
                gamma_equivariance_check(&twisted, &e_s, window, ctx.samples(10), &mut rng);
            report.insert("verdict".into(), verdict_value(&verdict));
            Ok((Value::Object(report), if verdict.pass { 0 } else { 1 }))
        }
        other => Err(err("/lift/kind", format!("unknown kind {:?}", other))),
    }
}

pub fn cmd_conjugate(ctx: &Ctx) -> Result<(Value, u8), ManifestError> {
    let e = manifest::build_eala(&ctx.manifest)?;
    let window = Window::new(e.ml.nullity, ctx.window());
    let section = ctx
        .manifest
        .conjugacy
        .clone()
        .ok_or_else(|| err("/conjugacy", "missing conjugacy section"))?;
    let mut candidate = if let Some(terms) = &section.h_prime {
        let mut basis = Vec::new();
        for (i, t) in terms.iter().enumerate() {
            basis.push(manifest::parse_element(t, &e, &format!("/conjugacy/h_prime/{}", i))?);
        }
        CartanCandidate { basis }
    } else if let Some(psi0_entries) = &section.psi0 {
        let psi0 = manifest::parse_psi(psi0_entries, &e, "/conjugacy/psi0")?;
        let f0 = kernel_automorphism(&e, psi0)
            .map_err(|er| err("/conjugacy/psi0", er))?;
        let basis = e
            .cartan_basis()
            .iter()
            .map(|h| eala_core::autmorph::apply_e(&e, &f0, h))
            .collect();
        CartanCandidate { basis }
    } else {
        return Err(err("/conjugacy", "provide either h_prime or psi0"));
    };

    let mut report = base_report("conjugate", &ctx.digest, ctx.window(), ctx.seed());

    // Optional reduction: move the candidate by a user-supplied
    // degree-preserving automorphism of L before running the algorithm.
    let mut reduction: Option<AutomorphismRep> = None;
    if let Some(g_section) = &section.g {
        let gmat = manifest::parse_base_matrix(g_section, e.ml.base.dim, "/conjugacy/g/matrix")?;
        let character = match &g_section.character {
            Some(residues) => {
                if residues.len() != e.ml.nullity {
                    return Err(err("/conjugacy/g/character", "wrong length"));
                }
                Character { orders: e.ml.orders.clone(), residues: residues.clone() }
            }
            None => Character::trivial(e.ml.nullity),
        };
        match lift_grading_preserving(&e, gmat, character) {
            Ok(f_g) => {
                candidate = CartanCandidate {
                    basis: candidate.basis.iter().map(|b| apply_e(&e, &f_g, b)).collect(),
                };
                report.insert("g_applied".into(), json!(true));
                reduction = Some(f_g);
            }
            Err(er) => {
                report.insert("status".into(), json!(format!("{:?}", er)));
                report.insert("witness".into(), json!(format!("{}", er)));
                report.insert("verified".into(), json!(false));
                return Ok((Value::Object(report), 1));
            }
        }
    }

    let mut rng = DetRng::new(ctx.seed());
    match conjugacy_construct(&e, &candidate, window, &mut rng) {
        Ok(out) => {
            let mut verified = out.maps_h_onto && out.verdict.pass;
            report.insert("status".into(), json!("ok"));
            report.insert("psi".into(), psi_value(&out.psi));
            report.insert("maps_h_onto".into(), json!(out.maps_h_onto));
            report.insert("verdict".into(), verdict_value(&out.verdict));
            if let Some(f_g) = reduction {
                // Final map: undo the reduction after the kernel step.
                let composite = AutomorphismRep::Composite(vec![f_g.inverse(), out.rep.clone()]);
                let check = verify_automorphism(&e, &composite, window, 40, &mut rng);
                verified = verified && check.pass;
                report.insert("composite_verdict".into(), verdict_value(&check));
            }
            report.insert("verified".into(), json!(verified));
            Ok((Value::Object(report), if verified { 0 } else { 1 }))
        }
        Err(e) => {
            let name = match &e {
                ConjugacyError::InvalidCandidate(_) => "InvalidCandidate",
                ConjugacyError::CoreCartanMismatch(_) => "CoreCartanMismatch",
                ConjugacyError::NotAGraph(_) => "NotAGraph",
                ConjugacyError::InconsistentWeightEquation(_) => "InconsistentWeightEquation",
                ConjugacyError::NotDerivation(_, _) => "NotDerivation",
            };
            report.insert("status".into(), json!(name));
            report.insert("witness".into(), json!(format!("{}", e)));
            report.insert("verified".into(), json!(false));
            Ok((Value::Object(report), 1))
        }
    }
}
