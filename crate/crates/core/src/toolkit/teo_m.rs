use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{hconn, wcm_check, WcmWitness};

/// Outcome of checking that `X_m` is `(n-m)`-connected for a wCM complex of
/// dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeoMReport {
    pub n: i32,
    pub m: i32,
    pub hypothesis_holds: bool,
    pub wcm_witness: Option<WcmWitness>,
    /// Connectivity of `X_m`, computed only when the hypothesis holds.
    pub xm_hconn: Option<i32>,
    pub required: i32,
    pub conclusion_holds: Option<bool>,
}

pub fn check_teo_m(x: &SimplicialComplex, n: i32, m: i32) -> Result<TeoMReport> {
    if m < 0 {
        return Err(Error::InvalidArgument(format!("m must be >= 0, got {m}")));
    }
    let wcm = wcm_check(x, n);
    let mut report = TeoMReport {
        n,
        m,
        hypothesis_holds: wcm.holds,
        wcm_witness: wcm.witness,
        xm_hconn: None,
        required: n - m,
        conclusion_holds: None,
    };
    if wcm.holds {
        let xm = x.xm_subcomplex(m)?;
        let h = hconn(&xm);
        report.xm_hconn = Some(h);
        report.conclusion_holds = Some(h >= n - m);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_cases() {
        let s2 = SimplicialComplex::simplex_boundary([0, 1, 2, 3]);
        let r = check_teo_m(&s2, 2, 1).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.xm_hconn, Some(1));
        assert_eq!(r.conclusion_holds, Some(true));
        let r = check_teo_m(&s2, 2, 2).unwrap();
        assert_eq!(r.conclusion_holds, Some(true));
        assert!(r.xm_hconn.unwrap() >= 0);
    }

    #[test]
    fn disconnected_fails_hypothesis() {
        let x = SimplicialComplex::from_facets([[0, 1, 2], [3, 4, 5]]);
        let r = check_teo_m(&x, 1, 1).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!(r.conclusion_holds, None);
    }
}
