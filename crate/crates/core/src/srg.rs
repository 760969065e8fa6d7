//! Strongly regular graphs and lower bounds on the defect `n - rank` of their
//! proper endomorphisms.
//!
//! A parameter set is *non-trivial* when `mu > 0` and `k > mu`, i.e. both the
//! graph and its complement are connected.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Floating-point slack used whenever a square root enters a comparison.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
    /// Positive restricted eigenvalue.
    pub r_eig: f64,
    /// Negative restricted eigenvalue.
    pub s_eig: f64,
}

impl SrgParams {
    /// Builds a parameter set, checking `k(k - lambda - 1) = (n - k - 1) mu`.
    pub fn new(n: usize, k: usize, lambda: usize, mu: usize) -> Result<Self> {
        if k >= n || (k > 0 && lambda + 1 > k) {
            return Err(Error::BadParameter(format!("({n},{k},{lambda},{mu}) is out of range")));
        }
        let lhs = if k == 0 { 0 } else { k * (k - lambda - 1) };
        if lhs != (n - k - 1) * mu {
            return Err(Error::BadParameter(format!("({n},{k},{lambda},{mu}) fails the feasibility identity")));
        }
        let b = lambda as f64 - mu as f64;
        let c = k as f64 - mu as f64;
        let disc = (b * b + 4.0 * c).sqrt();
        Ok(SrgParams { n, k, lambda, mu, r_eig: (b + disc) / 2.0, s_eig: (b - disc) / 2.0 })
    }

    /// Valency of the complement.
    pub fn k_complement(&self) -> usize {
        self.n - self.k - 1
    }

    pub fn is_nontrivial(&self) -> bool {
        self.mu > 0 && self.k > self.mu
    }

    pub fn feasibility_holds(&self) -> bool {
        let lhs = if self.k == 0 { 0 } else { self.k * (self.k - self.lambda - 1) };
        lhs == self.k_complement() * self.mu
    }

    fn nontrivial(&self) -> Result<()> {
        if self.is_nontrivial() {
            Ok(())
        } else {
            Err(Error::TrivialSrg)
        }
    }
}

/// The parameters of `g` if it is strongly regular.
pub fn srg_params(g: &Graph) -> Option<SrgParams> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let k = g.regular_valency()?;
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_neighbour_count(u, v);
            let slot = if g.has_edge(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    // complete and null graphs leave one of the two counts undefined
    SrgParams::new(n, k, lambda.unwrap_or(0), mu.unwrap_or(0)).ok()
}

pub fn is_conference(p: &SrgParams) -> bool {
    p.n == 4 * p.mu + 1 && p.k == 2 * p.mu
}

/// `(k - mu + 4) / 4`: every proper endomorphism has at least this defect.
pub fn defect_lower_bound(p: &SrgParams) -> Result<Ratio<i64>> {
    p.nontrivial()?;
    Ok(Ratio::new(p.k as i64 - p.mu as i64 + 4, 4))
}

/// `k - mu >= min(k, k') / 3`, in integers.
pub fn kmu_bound_check(p: &SrgParams) -> Result<bool> {
    p.nontrivial()?;
    Ok(3 * (p.k - p.mu) >= p.k.min(p.k_complement()))
}

/// `min(k, k') >= sqrt(n - 1)`, in integers.
pub fn moore_min_valency_check(p: &SrgParams) -> Result<bool> {
    p.nontrivial()?;
    let m = p.k.min(p.k_complement());
    Ok(m * m >= p.n - 1)
}

/// `1 + sqrt(n - 1) / 12`.
pub fn srg_defect_theorem_bound(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::BadParameter(format!("n must be at least 2, got {n}")));
    }
    Ok(1.0 + ((n - 1) as f64).sqrt() / 12.0)
}

/// Rank above which a primitive group of permutation rank 3 synchronizes every map.
pub fn rank3_sync_threshold(n: usize) -> Result<f64> {
    Ok(n as f64 - srg_defect_theorem_bound(n)?)
}

/// The two parameter-specific bounds chain down to the degree-only bound:
/// `(k - mu + 4)/4 >= (min(k,k')/3 + 4)/4 >= 1 + sqrt(n-1)/12`.
pub fn chained_bounds_consistent(p: &SrgParams) -> Result<bool> {
    let lb = defect_lower_bound(p)?;
    let lb = *lb.numer() as f64 / *lb.denom() as f64;
    Ok(lb + TOLERANCE >= srg_defect_theorem_bound(p.n)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    pub defect_lb: f64,
    pub theorem_lb: f64,
    pub threshold: f64,
    pub kmu_holds: bool,
    pub moore_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SrgReport {
    pub params: Option<SrgParams>,
    pub conference: Option<bool>,
    pub bounds: Option<Bounds>,
}

pub fn analyze(g: &Graph) -> Result<SrgReport> {
    let Some(p) = srg_params(g) else {
        return Ok(SrgReport { params: None, conference: None, bounds: None });
    };
    let bounds = if p.is_nontrivial() {
        let lb = defect_lower_bound(&p)?;
        Some(Bounds {
            defect_lb: *lb.numer() as f64 / *lb.denom() as f64,
            theorem_lb: srg_defect_theorem_bound(p.n)?,
            threshold: rank3_sync_threshold(p.n)?,
            kmu_holds: kmu_bound_check(&p)?,
            moore_holds: moore_min_valency_check(&p)?,
        })
    } else {
        None
    };
    Ok(SrgReport { params: Some(p), conference: Some(is_conference(&p)), bounds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: &Graph) -> (usize, usize, usize, usize) {
        let p = srg_params(g).unwrap();
        (p.n, p.k, p.lambda, p.mu)
    }

    #[test]
    fn parameters_of_small_graphs() {
        assert_eq!(params(&Graph::petersen()), (10, 3, 0, 1));
        let k3 = Graph::complete(3);
        assert_eq!(params(&k3.box_product(&k3)), (9, 4, 1, 2));
        assert_eq!(params(&Graph::cycle(5)), (5, 2, 0, 1));
        assert_eq!(params(&Graph::triangular(8).unwrap()), (28, 12, 6, 4));
        assert!(srg_params(&Graph::path(3)).is_none());
        assert!(srg_params(&Graph::cycle(6)).is_none());
    }

    #[test]
    fn eigenvalues_solve_the_quadratic() {
        for g in [Graph::petersen(), Graph::cycle(5), Graph::triangular(6).unwrap()] {
            let p = srg_params(&g).unwrap();
            for x in [p.r_eig, p.s_eig] {
                let v = x * x - (p.lambda as f64 - p.mu as f64) * x - (p.k as f64 - p.mu as f64);
                assert!(v.abs() < TOLERANCE);
            }
            assert!(p.r_eig > 0.0 && p.s_eig < 0.0);
        }
        let p = srg_params(&Graph::petersen()).unwrap();
        assert_eq!((p.r_eig, p.s_eig), (1.0, -2.0));
    }

    #[test]
    fn conference_graphs() {
        assert!(is_conference(&SrgParams::new(9, 4, 1, 2).unwrap()));
        assert!(is_conference(&SrgParams::new(5, 2, 0, 1).unwrap()));
        assert!(!is_conference(&SrgParams::new(10, 3, 0, 1).unwrap()));
    }

    #[test]
    fn bounds() {
        let petersen = SrgParams::new(10, 3, 0, 1).unwrap();
        assert_eq!(defect_lower_bound(&petersen).unwrap(), Ratio::new(3, 2));
        assert_eq!(defect_lower_bound(&SrgParams::new(9, 4, 1, 2).unwrap()).unwrap(), Ratio::new(3, 2));
        assert!(kmu_bound_check(&petersen).unwrap());
        assert!(moore_min_valency_check(&petersen).unwrap());
        assert!(moore_min_valency_check(&SrgParams::new(5, 2, 0, 1).unwrap()).unwrap());
        assert!(chained_bounds_consistent(&petersen).unwrap());
    }

    #[test]
    fn trivial_parameters_rejected() {
        // K_{5,5}: mu = k
        let p = SrgParams::new(10, 5, 0, 5).unwrap();
        assert_eq!(defect_lower_bound(&p).unwrap_err(), Error::TrivialSrg);
        assert_eq!(kmu_bound_check(&p).unwrap_err(), Error::TrivialSrg);
        assert!(SrgParams::new(10, 3, 0, 2).is_err());
    }

    #[test]
    fn degree_only_bounds() {
        assert!((srg_defect_theorem_bound(10).unwrap() - 1.25).abs() < TOLERANCE);
        assert!((srg_defect_theorem_bound(145).unwrap() - 2.0).abs() < TOLERANCE);
        assert!((srg_defect_theorem_bound(2).unwrap() - 13.0 / 12.0).abs() < TOLERANCE);
        assert!((rank3_sync_threshold(10).unwrap() - 8.75).abs() < TOLERANCE);
        assert!((rank3_sync_threshold(45).unwrap() - 43.447_229).abs() < 1e-5);
        for n in 2..200 {
            let sum = rank3_sync_threshold(n).unwrap() + srg_defect_theorem_bound(n).unwrap();
            assert!((sum - n as f64).abs() < TOLERANCE);
        }
        assert!(srg_defect_theorem_bound(1).is_err());
    }
}
