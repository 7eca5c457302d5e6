use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::LatError;
use crate::fpcore::{Presentation, Word};

/// Exponent of one of the two optional power relators: computed, or forced by the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Auto,
    Omit,
    Value(u32),
}

fn exponent(num: BigRational, den: BigRational, which: &str, over: Exponent) -> Result<Option<u32>, LatError> {
    match over {
        Exponent::Omit => return Ok(None),
        Exponent::Value(v) => return Ok(Some(v)),
        Exponent::Auto => {}
    }
    if !den.is_positive() {
        return Ok(None);
    }
    let e = num / den;
    if !e.is_integer() || !e.is_positive() {
        return Err(LatError::Invalid(format!("{which} exponent {e} is not a positive integer; supply an override")));
    }
    e.to_integer().to_u32().map(Some).ok_or_else(|| LatError::Invalid(format!("{which} exponent too large")))
}

/// Relators on `r1 r2 r3 j` for the Mostow group with the given p and 2k.
pub fn mostow_presentation(p: u32, two_k: u32, e1: Exponent, e2: Exponent) -> Result<Presentation, LatError> {
    if p < 3 || two_k == 0 || two_k % 2 != 0 {
        return Err(LatError::Invalid(format!("bad Mostow parameters p={p}, 2k={two_k}")));
    }
    let q = |n: i64| BigRational::from_integer(n.into());
    let (pp, k2) = (q(p as i64), q(two_k as i64));
    let a = exponent(q(6) * &pp, &pp - q(6), "(R1R2)", e1)?;
    // 4kp / ((2k-4)p - 4k) with 4k = 2 * two_k
    let b = exponent(q(2) * &k2 * &pp, (&k2 - q(4)) * &pp - q(2) * &k2, "(JR2R1)", e2)?;
    let mut rels = vec!["2'414'".to_string(), "3'4'14".into(), format!("1^{p}"), "4^3".into(), format!("(14)^{two_k}")];
    if let Some(a) = a {
        rels.push(format!("(12)^{a}"));
    }
    if let Some(b) = b {
        rels.push(format!("(214)^{b}"));
    }
    rels.push("br3(1,2)".into());
    let words = rels.iter().map(|s| Word::parse(s, 4)).collect::<Result<Vec<_>, _>>().map_err(LatError::Group)?;
    debug_assert!(words.iter().all(|w| !w.is_empty()));
    Ok(Presentation::with_names(4, words, vec!["r1".into(), "r2".into(), "r3".into(), "j".into()]))
}

/// Generators `A1, A2, A3, B1, B2, B3` of the subgroup with `B_j = R_j^2` and
/// `A_j^-1 = J^-1 R_j R_{j+1}`, indices mod 3.
pub fn gamma_mu_subgroup() -> Vec<Word> {
    let r = |j: usize| Word::gen(((j - 1) % 3 + 1) as i32);
    let jw = Word::gen(4);
    let a: Vec<Word> = (1..=3).map(|j| jw.inverse().mul(&r(j)).mul(&r(j + 1)).inverse()).collect();
    let b: Vec<Word> = (1..=3).map(|j| r(j).pow(2)).collect();
    a.into_iter().chain(b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_of_six_zero() {
        let p = mostow_presentation(6, 12, Exponent::Auto, Exponent::Auto).unwrap();
        let expect = Presentation::parse(4, "2'414', 3'4'14, 1^6, 4^3, (14)^12, (214)^6, br3(1,2)").unwrap();
        assert_eq!(p.relators(), expect.relators());
        let p = mostow_presentation(12, 8, Exponent::Auto, Exponent::Auto).unwrap();
        assert!(p.relators().contains(&Word::parse("(12)^12", 4).unwrap()));
        // 2k = 4: the (JR2R1) denominator is negative
        assert_eq!(mostow_presentation(5, 4, Exponent::Auto, Exponent::Auto).unwrap().relators().len(), 6);
        assert!(mostow_presentation(7, 6, Exponent::Auto, Exponent::Omit).is_ok());
    }

    #[test]
    fn gamma_mu_words() {
        let g = gamma_mu_subgroup();
        assert_eq!(g[3], Word::parse("11", 4).unwrap());
        assert_eq!(g[0].inverse(), Word::parse("4'12", 4).unwrap());
        assert_eq!(g[2].inverse(), Word::parse("4'31", 4).unwrap());
    }
}
