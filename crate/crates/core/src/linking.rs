//! Linking numbers of modular knots with the torus knot, in the lens space
//! `L(r, p-1)` and in its `r`-fold cover `S^3`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::group::{is_primitive, primitive_root, Classification, Element, GroupError, GroupParams, LiftedElement};
use crate::symbols::{self, SymbolError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymbolVariant {
    #[serde(rename = "psi")]
    LowerPsi,
    #[serde(rename = "Psi")]
    Psi,
    #[serde(rename = "Psi_h")]
    PsiH,
    #[serde(rename = "Psi_e")]
    PsiE,
}

impl FromStr for SymbolVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "psi" => Ok(SymbolVariant::LowerPsi),
            "Psi" => Ok(SymbolVariant::Psi),
            "Psi_h" => Ok(SymbolVariant::PsiH),
            "Psi_e" => Ok(SymbolVariant::PsiE),
            other => Err(format!("unknown variant '{other}' (expected psi, Psi, Psi_h or Psi_e)")),
        }
    }
}

impl fmt::Display for SymbolVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolVariant::LowerPsi => "psi",
            SymbolVariant::Psi => "Psi",
            SymbolVariant::PsiH => "Psi_h",
            SymbolVariant::PsiE => "Psi_e",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Lens,
    S3,
}

impl FromStr for Space {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lens" => Ok(Space::Lens),
            "s3" | "S3" => Ok(Space::S3),
            other => Err(format!("unknown space '{other}' (expected lens or s3)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinkingError {
    #[error("hypothesis of the {theorem} violated: {failed}")]
    Hypothesis { theorem: &'static str, failed: String },
    #[error("linking number undefined: {0}")]
    Undefined(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Residue `n` with `2pq n = psi(gamma) mod r`.
pub fn n_gamma(el: &Element) -> i64 {
    let params = el.params();
    let r = params.r();
    let inv = mod_inverse(2 * params.pq(), r);
    (symbols::psi(el).rem_euclid(r) * inv).rem_euclid(r)
}

/// Order of the knot class in `Z/r`: `r / gcd(r, psi)`.
pub fn m_gamma(el: &Element) -> i64 {
    let r = el.params().r();
    r / r.gcd(&symbols::psi(el))
}

/// Whether `(gamma, n)` lies in the kernel of the map to `Z/r`.
pub fn in_g_r(x: &LiftedElement) -> bool {
    let params = x.element.params();
    (2 * params.pq() * x.level - symbols::psi(&x.element)).rem_euclid(params.r()) == 0
}

/// Linking number of a generic fiber in the lens space, `-pq/r`.
pub fn generic_fiber_lk(params: &GroupParams) -> Ratio<i64> {
    Ratio::new(-params.pq(), params.r())
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

fn hypothesis(theorem: &'static str, failed: impl Into<String>) -> LinkingError {
    LinkingError::Hypothesis {
        theorem,
        failed: failed.into(),
    }
}

/// Checks the hypotheses of the theorem behind `variant` and returns the
/// symbol value it feeds into the linking formula.
fn checked_symbol(el: &Element, variant: SymbolVariant) -> Result<i64, LinkingError> {
    let class = el.classify();
    match variant {
        SymbolVariant::LowerPsi => {
            const THM: &str = "lens-space theorem for primitive hyperbolic elements";
            if class != Classification::Hyperbolic {
                return Err(hypothesis(THM, format!("element is {class}, not hyperbolic")));
            }
            if !is_primitive(el)? {
                return Err(hypothesis(THM, "element is not primitive"));
            }
            if el.trace_sign() <= 0 {
                return Err(hypothesis(THM, "trace is not > 2"));
            }
            if el.matrix().c().signum() <= 0 {
                return Err(hypothesis(THM, "lower-left entry c is not > 0"));
            }
            Ok(symbols::psi(el))
        }
        SymbolVariant::Psi | SymbolVariant::PsiH => {
            if class != Classification::Hyperbolic {
                return Err(hypothesis(
                    "theorem for hyperbolic elements",
                    format!("element is {class}, not hyperbolic"),
                ));
            }
            Ok(if variant == SymbolVariant::Psi {
                symbols::rademacher_psi(el)
            } else {
                symbols::homogeneous_psi_h(el)
            })
        }
        SymbolVariant::PsiE => Ok(symbols::modified_psi_e(el)),
    }
}

/// `lk(C_gamma, K) = symbol / r` in the lens space.
pub fn lk_lens(el: &Element, variant: SymbolVariant) -> Result<Ratio<i64>, LinkingError> {
    let sym = checked_symbol(el, variant)?;
    Ok(Ratio::new(sym, el.params().r()))
}

/// Symbol of the primitive root that sets the gcd in `S^3`, with the
/// multiplicity of the root.
fn root_symbol(el: &Element, variant: SymbolVariant) -> Result<(i64, i64), LinkingError> {
    match variant {
        SymbolVariant::LowerPsi => Ok((symbols::psi(el), 1)),
        _ => {
            if el.classify() == Classification::Central {
                return Err(LinkingError::Undefined(
                    "central elements have no primitive root".into(),
                ));
            }
            let (root, nu) = primitive_root(el)?;
            let value = match variant {
                SymbolVariant::Psi => symbols::rademacher_psi(&root),
                SymbolVariant::PsiH => symbols::homogeneous_psi_h(&root),
                _ => symbols::modified_psi_e(&root),
            };
            Ok((value, nu))
        }
    }
}

/// Integer linking number in `S^3` and the number of components,
/// `symbol / gcd(r, root symbol)` and `gcd(r, root symbol)`.
pub fn lk_s3(el: &Element, variant: SymbolVariant) -> Result<(i64, i64), LinkingError> {
    let sym = checked_symbol(el, variant)?;
    let (root_sym, _) = root_symbol(el, variant)?;
    let g = el.params().r().gcd(&root_sym);
    if sym % g != 0 {
        return Err(LinkingError::Symbol(SymbolError::Internal(format!(
            "symbol {sym} not divisible by gcd(r, root symbol) = {g}"
        ))));
    }
    Ok((sym / g, g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkingReport {
    pub p: u32,
    pub q: u32,
    pub word: String,
    pub variant: SymbolVariant,
    pub r: i64,
    pub psi_used: i64,
    /// `psi_used / r`, unreduced.
    pub lk_lens: String,
    pub n_gamma: i64,
    pub m_gamma: i64,
    pub components: Option<i64>,
    pub lk_s3: Option<i64>,
    pub root_symbol: Option<i64>,
    pub multiplicity: Option<i64>,
}

/// Full report. With `Space::S3` the `S^3` values must be defined; with
/// `Space::Lens` they are included when they are.
pub fn linking_report(el: &Element, variant: SymbolVariant, space: Space) -> Result<LinkingReport, LinkingError> {
    let params = el.params();
    let r = params.r();
    let sym = checked_symbol(el, variant)?;
    let s3 = lk_s3(el, variant).and_then(|lk| Ok((lk, root_symbol(el, variant)?)));
    let s3 = match (s3, space) {
        (Ok(v), _) => Some(v),
        (Err(e), Space::S3) => return Err(e),
        (Err(_), Space::Lens) => None,
    };
    // order of the primitive knot's class; equals r / gcd(r, psi) when primitive
    let m = match &s3 {
        Some((_, (root_sym, _))) => r / r.gcd(root_sym),
        None => r / r.gcd(&sym),
    };
    Ok(LinkingReport {
        p: params.p(),
        q: params.q(),
        word: el.word().to_string(),
        variant,
        r,
        psi_used: sym,
        lk_lens: format!("{sym}/{r}"),
        n_gamma: n_gamma(el),
        m_gamma: m,
        components: s3.as_ref().map(|((_, g), _)| *g),
        lk_s3: s3.as_ref().map(|((lk, _), _)| *lk),
        root_symbol: s3.as_ref().map(|(_, (rs, _))| *rs),
        multiplicity: s3.as_ref().map(|(_, (_, nu))| *nu),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{random_word, Matrix2};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn n_and_m_examples() {
        let g = GroupParams::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let el = Element::new(&g, &random_word(&g, &mut rng, 6));
            assert_eq!(n_gamma(&el), 0);
            assert_eq!(m_gamma(&el), 1);
        }
        let g = GroupParams::new(2, 5).unwrap();
        assert_eq!(n_gamma(&Element::t(&g)), 0);
        assert_eq!(m_gamma(&Element::t(&g)), 1);
        let g = GroupParams::new(3, 4).unwrap();
        assert_eq!(n_gamma(&Element::s(&g)), 4);
        assert_eq!(m_gamma(&Element::s(&g)), 5);
    }

    #[test]
    fn fiber_values() {
        for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 7)] {
            let g = GroupParams::new(p, q).unwrap();
            let r = g.r();
            assert_eq!(lk_lens(&Element::s(&g), SymbolVariant::PsiE).unwrap(), Ratio::new(-(q as i64), r));
            assert_eq!(lk_lens(&Element::u(&g), SymbolVariant::PsiE).unwrap(), Ratio::new(-(p as i64), r));
            assert_eq!(lk_lens(&Element::t(&g), SymbolVariant::PsiE).unwrap(), Ratio::from_integer(1));
            assert_eq!(generic_fiber_lk(&g), Ratio::new(-g.pq(), r));
            assert_eq!(lk_s3(&Element::t(&g).pow(3), SymbolVariant::PsiE).unwrap(), (3, r));
            assert_eq!(lk_s3(&Element::s(&g), SymbolVariant::PsiE).unwrap(), (-(q as i64), 1));
        }
    }

    #[test]
    fn psi_one_element_in_s3() {
        let g = GroupParams::new(3, 4).unwrap();
        let gamma = Element::u(&g).mul(&Element::s_power(&g, -1));
        assert_eq!(lk_s3(&gamma, SymbolVariant::LowerPsi).unwrap(), (1, 1));
        let report = linking_report(&gamma, SymbolVariant::LowerPsi, Space::S3).unwrap();
        assert_eq!(report.lk_lens, "1/5");
        assert_eq!(report.components, Some(1));
        assert_eq!(report.m_gamma, 5);
    }

    #[test]
    fn hypotheses_are_checked() {
        let g = GroupParams::new(2, 5).unwrap();
        let t = Element::t(&g);
        assert!(matches!(lk_lens(&t, SymbolVariant::LowerPsi), Err(LinkingError::Hypothesis { .. })));
        assert!(matches!(lk_lens(&t, SymbolVariant::Psi), Err(LinkingError::Hypothesis { .. })));
        assert!(matches!(lk_lens(&Element::s(&g), SymbolVariant::PsiH), Err(LinkingError::Hypothesis { .. })));
        let hyp = Element::u_power(&g, 2).mul(&Element::s(&g));
        assert_eq!(hyp.classify(), Classification::Hyperbolic);
        let sq = hyp.pow(2);
        assert!(matches!(lk_lens(&sq, SymbolVariant::LowerPsi), Err(LinkingError::Hypothesis { .. })));
        assert!(lk_lens(&sq, SymbolVariant::Psi).is_ok());
        assert!(matches!(
            lk_s3(&Element::identity(&g), SymbolVariant::PsiE),
            Err(LinkingError::Undefined(_))
        ));
        let m = Matrix2::from_integers(GroupParams::new(2, 3).unwrap().field(), [[2, 1], [1, 1]]).unwrap();
        let g23 = GroupParams::new(2, 3).unwrap();
        let a = Element::from_matrix(&g23, &m).unwrap();
        assert_eq!(lk_s3(&a, SymbolVariant::LowerPsi).unwrap(), (0, 1));
    }

    #[test]
    fn g_r_membership_is_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (p, q) in [(2, 5), (3, 4), (3, 5), (5, 7)] {
            let g = GroupParams::new(p, q).unwrap();
            let r = g.r();
            let inv = mod_inverse(2 * g.pq(), r);
            let member = |el: Element| {
                let n = (symbols::psi(&el).rem_euclid(r) * inv).rem_euclid(r) + r * 3;
                LiftedElement::new(el, n)
            };
            for _ in 0..40 {
                let x = member(Element::new(&g, &random_word(&g, &mut rng, 6)));
                let y = member(Element::new(&g, &random_word(&g, &mut rng, 6)));
                assert!(in_g_r(&x) && in_g_r(&y));
                assert!(in_g_r(&crate::group::lift_multiply(&x, &y).unwrap()));
                assert!(in_g_r(&crate::group::lift_inverse(&x)));
                let off = LiftedElement::new(x.element.clone(), x.level + 1);
                assert!(!in_g_r(&off));
            }
        }
    }
}
