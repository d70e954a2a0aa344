//! Rank-1 groups described by their restricted-root multiplicities, and the
//! constants and functions of `(p, q)` derived from them.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::special_fn::{gamma_real, normalized_bessel_limit, BesselOrder, HypParams};

/// A real rank-1 semisimple group, known through the multiplicities
/// `p = n(α) ≥ 1` and `q = n(2α) ≥ 0`, with `α(H₀) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRank1 {
    name: String,
    p: u32,
    q: u32,
}

impl GroupRank1 {
    pub fn new(name: impl Into<String>, p: u32, q: u32) -> Result<Self> {
        if p < 1 {
            return Err(Error::domain(format!(
                "root multiplicity p must be >= 1, got {p}"
            )));
        }
        Ok(GroupRank1 {
            name: name.into(),
            p,
            q,
        })
    }

    /// The `(p, q) = (2, 0)` group used for `SL(2, ℝ)` in the `(ϒϒ)` form.
    pub fn sl2r_sec4() -> Self {
        GroupRank1 {
            name: SL2R_SEC4.into(),
            p: 2,
            q: 0,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `ρ₀ = (p + 2q)/2`.
    pub fn rho0(&self) -> f64 {
        f64::from(self.p + 2 * self.q) / 2.0
    }

    /// `n = dim G/K = p + q + 1`.
    pub fn n(&self) -> u32 {
        self.p + self.q + 1
    }
}

impl fmt::Display for GroupRank1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p={}, q={})", self.name, self.p, self.q)
    }
}

/// Spectral index `λ ∈ 𝔞*_ℂ ≅ ℂ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam(pub Complex64);

impl SpectralParam {
    pub fn new(re: f64, im: f64) -> Self {
        SpectralParam(Complex64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        SpectralParam(Complex64::new(re, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    /// Image under the non-trivial Weyl element, `λ ↦ −λ`.
    pub fn reflected(self) -> Self {
        SpectralParam(-self.0)
    }

    pub fn is_finite(self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }
}

impl From<f64> for SpectralParam {
    fn from(re: f64) -> Self {
        SpectralParam::real(re)
    }
}

impl From<Complex64> for SpectralParam {
    fn from(z: Complex64) -> Self {
        SpectralParam(z)
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex64 { re, im } = self.0;
        if im < 0.0 || (im == 0.0 && im.is_sign_negative()) {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl FromStr for SpectralParam {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, `a+i` (and `j` for `i`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("cannot parse spectral parameter {s:?}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let Some(body) = text.strip_suffix(['i', 'j']) else {
            let lam = SpectralParam::real(parse(&text)?);
            return if lam.is_finite() { Ok(lam) } else { Err(bad()) };
        };
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            0.0
        } else {
            parse(re_part)?
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => parse(other)?,
        };
        let lam = SpectralParam::new(re, im);
        if lam.is_finite() {
            Ok(lam)
        } else {
            Err(bad())
        }
    }
}

/// `(a, b, c) = ((p+2q+2λ)/4, (p+2q−2λ)/4, (p+q+1)/2)`, so that
/// `φ_λ(exp tH₀) = ₂F₁(a, b; c; −sinh²t)`.
pub fn hyp_params(g: &GroupRank1, lam: SpectralParam) -> HypParams {
    let half_rho = Complex64::new(g.rho0() / 2.0, 0.0);
    let half_lam = lam.0 / 2.0;
    let c = Complex64::new(f64::from(g.n()) / 2.0, 0.0);
    HypParams::new(half_rho + half_lam, half_rho - half_lam, c)
        .expect("c = n/2 >= 1 is never a pole")
}

/// Which normalization of the Casimir eigenvalue to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenvalueScale {
    /// `λ² − ρ₀²`, the right-hand side of the radial ODE.
    #[default]
    Radial,
    /// `(λ² − ρ₀²) / (2(p + 4q))`.
    Normalized,
}

pub fn eigenvalue(g: &GroupRank1, lam: SpectralParam, scale: EigenvalueScale) -> Complex64 {
    let rho = g.rho0();
    let value = lam.0 * lam.0 - rho * rho;
    match scale {
        EigenvalueScale::Radial => value,
        EigenvalueScale::Normalized => value / (2.0 * f64::from(g.p + 4 * g.q)),
    }
}

/// Polar-decomposition density `D(t) = e^{−2ρ₀t} g₁(t)^{−p} g₂(t)^{−q}` with
/// `g_k(t) = e^{−2kt}(1 − e^{−2kt})^{−1}`, i.e.
/// `e^{−2ρ₀t}(e^{2t} − 1)^p (e^{4t} − 1)^q`.
pub fn jacobian_d(g: &GroupRank1, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("D(t) is defined for t > 0, got {t}")));
    }
    Ok((-2.0 * g.rho0() * t).exp()
        * (2.0 * t).exp_m1().powi(g.p as i32)
        * (4.0 * t).exp_m1().powi(g.q as i32))
}

/// `c₀ = π^{1/2} 2^{q/2 − 2} Γ((n−1)/2) / Γ(n/2)`.
pub fn c0_constant(g: &GroupRank1) -> Result<f64> {
    c0_from(g.n(), g.q)
}

pub(crate) fn c0_from(n: u32, q: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("c0 needs n >= 2 (Γ(0) pole)"));
    }
    let n = f64::from(n);
    Ok(
        PI.sqrt() * 2f64.powf(f64::from(q) / 2.0 - 2.0) * gamma_real((n - 1.0) / 2.0)?
            / gamma_real(n / 2.0)?,
    )
}

/// Constant that makes the leading Stanton–Tomas term tend to `1` as
/// `t → 0⁺` (continuous `𝒥` convention). `[t^{n−1}/D(t)]^{1/2} → 2^{−ρ₀}`,
/// so this is `2^{ρ₀} / 𝒥_{(n−2)/2}(0⁺)`.
pub fn unit_normalized_c0(g: &GroupRank1) -> Result<f64> {
    let order = BesselOrder::new((f64::from(g.n()) - 2.0) / 2.0)?;
    Ok(2f64.powf(g.rho0()) / normalized_bessel_limit(order)?)
}

/// The two elements of the rank-1 Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylElement {
    Identity,
    Reflection,
}

impl WeylElement {
    pub fn act(self, lam: SpectralParam) -> SpectralParam {
        match self {
            WeylElement::Identity => lam,
            WeylElement::Reflection => lam.reflected(),
        }
    }

    /// Membership in `l_s = {λ : s⁻¹λ = λ}`. Both elements are involutions.
    pub fn fixes(self, lam: SpectralParam) -> bool {
        self.act(lam) == lam
    }
}

/// Predicate form of the fixed set `l_s(𝔞*_ℂ)`.
pub fn weyl_fixed_set(s: WeylElement) -> impl Fn(SpectralParam) -> bool {
    move |lam| s.fixes(lam)
}

pub const SL2R_SEC2: &str = "sl2r-sec2";
pub const SL2R_SEC4: &str = "sl2r-sec4";

/// A radial model: either a `(p, q)` group or the `SL(2, ℝ)` operator
/// `d²/dt² + 2 coth(2t) d/dt + 1` in its own time normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Sl2rSec2,
    Group(GroupRank1),
}

impl Model {
    pub fn name(&self) -> &str {
        match self {
            Model::Sl2rSec2 => SL2R_SEC2,
            Model::Group(g) => g.name(),
        }
    }

    pub fn group(&self) -> Option<&GroupRank1> {
        match self {
            Model::Sl2rSec2 => None,
            Model::Group(g) => Some(g),
        }
    }

    /// Gauss parameters with `φ_λ(t) = ₂F₁(a, b; c; −sinh²t)`. For the
    /// `SL(2, ℝ)` form these are `((1−λ)/2, (1+λ)/2; 1)`, i.e.
    /// `P_{(λ−1)/2}(cosh 2t)`.
    pub fn hyp_params(&self, lam: SpectralParam) -> HypParams {
        match self {
            Model::Sl2rSec2 => {
                let half = lam.0 / 2.0;
                HypParams::new(0.5 - half, 0.5 + half, Complex64::new(1.0, 0.0)).expect("c = 1")
            }
            Model::Group(g) => hyp_params(g, lam),
        }
    }

    /// `λ` at which the spherical function is identically `1`.
    pub fn trivial_index(&self) -> f64 {
        match self {
            Model::Sl2rSec2 => 1.0,
            Model::Group(g) => g.rho0(),
        }
    }
}

#[derive(Debug, Deserialize)]
struct CatalogFile {
    #[serde(default)]
    group: Vec<CatalogEntry>,
}

#[derive(Debug, Deserialize)]
struct CatalogEntry {
    name: String,
    p: u32,
    q: u32,
}

/// Named models. `sl2r-sec2` and `sl2r-sec4` are always present; further
/// `(p, q)` groups come from a TOML file of `[[group]]` tables.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: BTreeMap<String, Model>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Catalog {
    pub fn builtin() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(SL2R_SEC2.to_string(), Model::Sl2rSec2);
        entries.insert(SL2R_SEC4.to_string(), Model::Group(GroupRank1::sl2r_sec4()));
        Catalog { entries }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: CatalogFile = toml::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        let mut catalog = Self::builtin();
        for entry in file.group {
            if catalog.entries.contains_key(&entry.name) {
                return Err(Error::Catalog(format!(
                    "duplicate group name {:?}",
                    entry.name
                )));
            }
            let group = GroupRank1::new(entry.name.clone(), entry.p, entry.q)
                .map_err(|e| Error::Catalog(e.to_string()))?;
            catalog.entries.insert(entry.name, Model::Group(group));
        }
        Ok(catalog)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn get(&self, name: &str) -> Result<Model> {
        self.entries
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Catalog(format!("unknown group {name:?}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
