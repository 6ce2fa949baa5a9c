use std::collections::VecDeque;
use std::sync::Arc;

use super::element::{Classification, Element};
use super::params::GroupParams;
use super::word::{normal_form, push_syllable, Generator, GroupWord, Syllable};
use super::GroupError;

/// Cyclically reduced normal form, rotated to its canonical representative
/// (the lexicographically least rotation that starts with `S`).
///
/// Two elements are conjugate up to sign exactly when these syllable lists
/// agree. The sign is carried along for reference only.
pub fn cyclic_reduce(params: &GroupParams, word: &GroupWord) -> GroupWord {
    let nf = normal_form(params, word);
    let mut sign = nf.central_sign;
    let mut syl: VecDeque<Syllable> = nf.syllables.into();
    while syl.len() >= 2 && syl.front().map(|s| s.generator) == syl.back().map(|s| s.generator) {
        let first = syl.pop_front().expect("nonempty");
        let mut rest: Vec<Syllable> = syl.into();
        push_syllable(params, &mut rest, &mut sign, first);
        syl = rest.into();
    }
    GroupWord::new(sign, canonical_rotation(&Vec::from(syl)))
}

/// Least rotation starting with `S` of an alternating cyclic word.
pub(crate) fn canonical_rotation(syl: &[Syllable]) -> Vec<Syllable> {
    if syl.len() <= 1 {
        return syl.to_vec();
    }
    let n = syl.len();
    (0..n)
        .filter(|&k| syl[k].generator == Generator::S)
        .map(|k| syl[k..].iter().chain(&syl[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_else(|| syl.to_vec())
}

/// Smallest `d` with the cyclic word invariant under rotation by `d`.
pub(crate) fn cyclic_period(syl: &[Syllable]) -> usize {
    let n = syl.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (0..n).all(|i| syl[i] == syl[(i + d) % n]))
        .unwrap_or(n)
}

fn require_non_elliptic(el: &Element) -> Result<Classification, GroupError> {
    match el.classify() {
        Classification::Elliptic => Err(GroupError::Domain(
            "primitivity is only defined here for non-elliptic elements".into(),
        )),
        Classification::Central => Err(GroupError::Domain("central elements have no primitive root".into())),
        c => Ok(c),
    }
}

/// Whether a hyperbolic or parabolic element is not `+-sigma^n` with
/// `|n| >= 2`.
pub fn is_primitive(el: &Element) -> Result<bool, GroupError> {
    require_non_elliptic(el)?;
    let cyc = cyclic_reduce(el.params(), el.word());
    Ok(cyclic_period(&cyc.syllables) == cyc.syllables.len())
}

/// `(root, nu)` with `el` conjugate to `+-root^nu`.
///
/// For non-elliptic input the root is primitive with positive sign; for
/// elliptic input it is `S_p` or `U_q` and `nu` lies in `1..p` or `1..q`.
pub fn primitive_root(el: &Element) -> Result<(Element, i64), GroupError> {
    let params: &Arc<GroupParams> = el.params();
    if el.classify() == Classification::Elliptic {
        let cyc = cyclic_reduce(params, el.word());
        let syl = cyc.syllables[0];
        return Ok((syl.generator.element(params), syl.exponent));
    }
    require_non_elliptic(el)?;
    let cyc = cyclic_reduce(params, el.word());
    let d = cyclic_period(&cyc.syllables);
    let root = Element::new(params, &GroupWord::from_syllables(cyc.syllables[..d].to_vec()));
    Ok((root, (cyc.syllables.len() / d) as i64))
}
