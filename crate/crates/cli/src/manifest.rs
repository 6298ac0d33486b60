//! Manifest schema and the build pipeline from a manifest to an assembled
//! algebra. Validation failures carry JSON-pointer-style locations.

use std::collections::BTreeMap;

use serde::Deserialize;

use eala_core::autmorph::DerMap;
use eala_core::dercoc::{build_d_algebra, AffineCocycle, CElement, HomWeight};
use eala_core::eala::{assemble_eala, EalaStructure};
use eala_core::exactnum::Rat;
use eala_core::glie::Degree;
use eala_core::multiloop::{build_multiloop, MultiloopAlgebra};
use eala_core::rootsys::{
    build_automorphism, build_root_system, build_simple_algebra, identity_automorphism,
    FiniteOrderAut, Series, SimpleLieAlgebra,
};
use eala_core::Scalar;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub base: BaseSection,
    #[serde(default)]
    pub automorphisms: Vec<AutSection>,
    #[serde(default, rename = "D_extra")]
    pub d_extra: Vec<DerivationSection>,
    #[serde(default)]
    pub tau: Vec<TauEntry>,
    #[serde(default)]
    pub window: Option<i64>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub degree_bound: Option<i64>,
    #[serde(default)]
    pub conjugacy: Option<ConjugacySection>,
    #[serde(default)]
    pub lift: Option<LiftSection>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSection {
    pub series: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutSection {
    #[serde(default)]
    pub diagram: Option<Vec<usize>>,
    #[serde(default)]
    pub kac: Option<Vec<i64>>,
    pub order: u32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSection {
    pub xi: Vec<i64>,
    pub theta: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TauEntry {
    pub d1: usize,
    pub d2: usize,
    /// C-basis coefficients keyed by the dual index.
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugacySection {
    /// Explicit basis of the candidate Cartan.
    #[serde(default)]
    pub h_prime: Option<Vec<Vec<ElementTerm>>>,
    /// Roundtrip mode: derive the candidate as the image of `H` under the
    /// kernel automorphism of this derivation.
    #[serde(default)]
    pub psi0: Option<Vec<PsiEntry>>,
    /// Optional degree-preserving automorphism of `L` used to move the
    /// candidate into the equal-core-Cartan position first.
    #[serde(default)]
    pub g: Option<GSection>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSection {
    /// Columns of the base-algebra matrix, entries as scalar strings.
    pub matrix: Vec<Vec<String>>,
    /// Optional degree character residues (with the automorphism orders).
    #[serde(default)]
    pub character: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiEntry {
    pub d: usize,
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementTerm {
    pub slot: String,
    pub degree: Vec<i64>,
    pub coeff: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftSection {
    pub kind: String,
    #[serde(default)]
    pub x: Option<Vec<ElementTerm>>,
    #[serde(default)]
    pub psi: Option<Vec<PsiEntry>>,
}

/// A manifest validation error with its location.
#[derive(Clone, Debug)]
pub struct ManifestError {
    pub pointer: String,
    pub message: String,
}

impl std::fmt::Display for ManifestError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.pointer, self.message)
    }
}

impl std::error::Error for ManifestError {}

fn err(pointer: impl Into<String>, message: impl std::fmt::Display) -> ManifestError {
    ManifestError { pointer: pointer.into(), message: format!("{}", message) }
}

pub fn parse_series(s: &str) -> Option<Series> {
    match s {
        "A" => Some(Series::A),
        "B" => Some(Series::B),
        "C" => Some(Series::C),
        "D" => Some(Series::D),
        "E" => Some(Series::E),
        "F" => Some(Series::F),
        "G" => Some(Series::G),
        "BC" => Some(Series::BC),
        _ => None,
    }
}

pub fn parse_scalar(s: &str, pointer: &str) -> Result<Scalar, ManifestError> {
    s.parse::<Scalar>().map_err(|e| err(pointer, e))
}

fn parse_rational(s: &str, pointer: &str) -> Result<Rat, ManifestError> {
    let scalar = parse_scalar(s, pointer)?;
    scalar.as_rat().ok_or_else(|| err(pointer, "expected a rational value"))
}

pub fn build_base(manifest: &Manifest) -> Result<SimpleLieAlgebra, ManifestError> {
    let series = parse_series(&manifest.base.series)
        .ok_or_else(|| err("/base/series", "unknown series"))?;
    let datum = build_root_system(series, manifest.base.rank).map_err(|e| err("/base", e))?;
    build_simple_algebra(&datum).map_err(|e| err("/base", e))
}

pub fn build_loop(manifest: &Manifest) -> Result<MultiloopAlgebra, ManifestError> {
    let base = build_base(manifest)?;
    let mut auts: Vec<FiniteOrderAut> = Vec::new();
    if manifest.automorphisms.is_empty() {
        return Err(err("/automorphisms", "at least one entry is required (use order 1 for untwisted)"));
    }
    for (i, section) in manifest.automorphisms.iter().enumerate() {
        let pointer = format!("/automorphisms/{}", i);
        let rank = base.rank();
        let diagram = section.diagram.clone().unwrap_or_else(|| (0..rank).collect());
        let kac = section.kac.clone().unwrap_or_else(|| vec![0; rank]);
        if diagram.len() != rank || kac.len() != rank {
            return Err(err(pointer, "diagram and kac must have one entry per simple root"));
        }
        let aut = if section.order == 1
            && diagram.iter().enumerate().all(|(a, &b)| a == b)
            && kac.iter().all(|&k| k == 0)
        {
            identity_automorphism(&base)
        } else {
            build_automorphism(&base, &diagram, &kac, section.order).map_err(|e| err(pointer, e))?
        };
        auts.push(aut);
    }
    build_multiloop(&base, &auts).map_err(|e| err("/automorphisms", e))
}

pub fn build_derivations(
    manifest: &Manifest,
    ml: &MultiloopAlgebra,
) -> Result<eala_core::dercoc::DAlgebra, ManifestError> {
    let n = ml.nullity;
    let mut extra = Vec::new();
    for (i, section) in manifest.d_extra.iter().enumerate() {
        let pointer = format!("/D_extra/{}", i);
        if section.xi.len() != n || section.theta.len() != n {
            return Err(err(pointer, format!("xi and theta must have length {}", n)));
        }
        let theta: Result<Vec<Rat>, _> = section
            .theta
            .iter()
            .map(|s| parse_rational(s, &pointer))
            .collect();
        extra.push((Degree(section.xi.clone()), HomWeight(theta?)));
    }
    let bound = manifest.degree_bound.unwrap_or(eala_core::dercoc::DEFAULT_DEGREE_BOUND);
    build_d_algebra(n, &ml.orders, &extra, bound).map_err(|e| err("/D_extra", e))
}

pub fn build_tau(
    manifest: &Manifest,
    da: &eala_core::dercoc::DAlgebra,
) -> Result<AffineCocycle, ManifestError> {
    let mut tau = AffineCocycle::zero();
    for (i, entry) in manifest.tau.iter().enumerate() {
        let pointer = format!("/tau/{}", i);
        if entry.d1 >= da.dim() || entry.d2 >= da.dim() {
            return Err(err(pointer, "derivation index out of range"));
        }
        let mut c = CElement::new();
        for (k, v) in &entry.value {
            let idx: usize =
                k.parse().map_err(|_| err(format!("{}/value", pointer), "bad dual index"))?;
            if idx >= da.dim() {
                return Err(err(format!("{}/value", pointer), "dual index out of range"));
            }
            let s = parse_scalar(v, &format!("{}/value/{}", pointer, k))?;
            if !s.is_zero() {
                c.insert(idx, s);
            }
        }
        tau.table.insert((entry.d1, entry.d2), c);
    }
    Ok(tau)
}

/// Full pipeline: base, loop algebra, derivations, cocycle, assembly.
pub fn build_eala(manifest: &Manifest) -> Result<EalaStructure, ManifestError> {
    let ml = build_loop(manifest)?;
    let da = build_derivations(manifest, &ml)?;
    let tau = build_tau(manifest, &da)?;
    assemble_eala(ml, da, tau).map_err(|e| err("/tau", e))
}

pub fn parse_psi(
    entries: &[PsiEntry],
    e: &EalaStructure,
    pointer: &str,
) -> Result<DerMap, ManifestError> {
    let mut psi = DerMap::zero(e.da.dim());
    for (i, entry) in entries.iter().enumerate() {
        let p = format!("{}/{}", pointer, i);
        if entry.d >= e.da.dim() {
            return Err(err(p, "derivation index out of range"));
        }
        for (k, v) in &entry.value {
            let idx: usize = k.parse().map_err(|_| err(format!("{}/value", p), "bad dual index"))?;
            if idx >= e.da.dim() {
                return Err(err(format!("{}/value", p), "dual index out of range"));
            }
            let s = parse_scalar(v, &format!("{}/value/{}", p, k))?;
            if !s.is_zero() {
                psi.values[entry.d].insert(idx, s);
            }
        }
    }
    Ok(psi)
}

/// Parse a square base-algebra matrix given by columns of scalar strings.
pub fn parse_base_matrix(
    g: &GSection,
    dim: usize,
    pointer: &str,
) -> Result<eala_core::exactnum::SparseMatrix, ManifestError> {
    if g.matrix.len() != dim {
        return Err(err(pointer, format!("expected {} columns", dim)));
    }
    let mut m = eala_core::exactnum::SparseMatrix::new(dim, dim);
    for (c, col) in g.matrix.iter().enumerate() {
        if col.len() != dim {
            return Err(err(format!("{}/{}", pointer, c), format!("expected {} entries", dim)));
        }
        for (r, entry) in col.iter().enumerate() {
            let s = parse_scalar(entry, &format!("{}/{}/{}", pointer, c, r))?;
            m.set(r, c, s);
        }
    }
    Ok(m)
}

/// Parse one element of `E` from its term list.
pub fn parse_element(
    terms: &[ElementTerm],
    e: &EalaStructure,
    pointer: &str,
) -> Result<eala_core::GradedElement, ManifestError> {
    use eala_core::glie::GradedLieAlgebra;
    let mut out = eala_core::GradedElement::zero();
    for (i, term) in terms.iter().enumerate() {
        let p = format!("{}/{}", pointer, i);
        if term.degree.len() != e.nullity() {
            return Err(err(p, format!("degree must have length {}", e.nullity())));
        }
        let deg = Degree(term.degree.clone());
        let coeff = parse_scalar(&term.coeff, &format!("{}/coeff", p))?;
        let (kind, idx_str) = term.slot.split_at(1);
        let idx: usize =
            idx_str.parse().map_err(|_| err(format!("{}/slot", p), "bad slot index"))?;
        let (slot_deg, slot) = match kind {
            "L" => {
                if idx >= e.dim_l_at(&deg) {
                    return Err(err(format!("{}/slot", p), "L slot out of range in this degree"));
                }
                (deg.clone(), idx)
            }
            "C" => {
                if idx >= e.da.dim() {
                    return Err(err(format!("{}/slot", p), "C index out of range"));
                }
                e.c_slot(idx)
            }
            "D" => {
                if idx >= e.da.dim() {
                    return Err(err(format!("{}/slot", p), "D index out of range"));
                }
                e.d_slot(idx)
            }
            _ => return Err(err(format!("{}/slot", p), "slot must start with L, C, or D")),
        };
        if slot_deg != deg {
            return Err(err(
                format!("{}/degree", p),
                format!("slot {} lives in degree {}", term.slot, slot_deg),
            ));
        }
        out.add_term(deg, slot, &coeff);
    }
    Ok(out)
}
