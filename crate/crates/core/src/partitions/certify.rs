use super::canonical::canonical_from_decmin;
use super::chain::CanonicalChain;
use crate::error::{Error, Result};
use crate::setfn::{IntVec, SupermodularOracle};

/// A chain of `m`-top, `m`-tight sets on whose blocks `m` is near-uniform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecMinCertificate {
    pub chain: CanonicalChain,
    pub witness: IntVec,
}

impl DecMinCertificate {
    /// Re-checks every condition against the oracle.
    pub fn check(&self, p: &SupermodularOracle) -> Result<()> {
        let m = &self.witness;
        self.chain.validate(p.full())?;
        if !p.is_member(m)? {
            return Err(Error::NotAMember);
        }
        for &c in &self.chain.chain {
            if Some(m.sum_over(c)) != p.eval(c).finite() {
                return Err(Error::NotDecMin(format!("{c:?} is not tight")));
            }
            if !m.is_top(c) {
                return Err(Error::NotDecMin(format!("{c:?} is not top")));
            }
        }
        for block in self.chain.blocks() {
            if !m.is_near_uniform_on(block) {
                return Err(Error::NotDecMin(format!("not near-uniform on {block:?}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Certified(DecMinCertificate),
    /// `m + χ_s − χ_t` is a member with `m(t) ≥ m(s) + 2`.
    Tightening {
        s: usize,
        t: usize,
    },
}

/// First 1-tightening step in lexicographic `(s, t)` order, if any.
pub fn find_tightening_step(p: &SupermodularOracle, m: &IntVec) -> Result<Option<(usize, usize)>> {
    for s in 0..p.n() {
        for t in 0..p.n() {
            if m[t] >= m[s] + 2 && p.exchange_feasible(m, s, t)? {
                return Ok(Some((s, t)));
            }
        }
    }
    Ok(None)
}

/// Either a tightening step showing `m` is not dec-min, or a checked certificate that it is.
pub fn certify_decmin(p: &SupermodularOracle, m: &IntVec) -> Result<Certification> {
    if !p.is_member(m)? {
        return Err(Error::NotAMember);
    }
    if let Some((s, t)) = find_tightening_step(p, m)? {
        return Ok(Certification::Tightening { s, t });
    }
    let cert = DecMinCertificate {
        chain: canonical_from_decmin(p, m)?,
        witness: m.clone(),
    };
    cert.check(p)?;
    Ok(Certification::Certified(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::setfn::{Ext, GroundSet, Subset};

    #[test]
    fn non_decmin_member_yields_a_step() {
        let q = fixtures::shifted_rank_two();
        assert_eq!(
            certify_decmin(&q, &IntVec(vec![2, 2, 0, 0])).unwrap(),
            Certification::Tightening { s: 2, t: 0 }
        );
    }

    #[test]
    fn decmin_member_is_certified() {
        let r = fixtures::skewed_pair();
        let Certification::Certified(cert) = certify_decmin(&r, &IntVec(vec![3, 2])).unwrap()
        else {
            panic!("expected a certificate");
        };
        assert_eq!(cert.chain.chain, vec![Subset::singleton(0), r.full()]);
        let q = fixtures::shifted_rank_two();
        assert!(matches!(
            certify_decmin(&q, &IntVec(vec![2, 1, 1, 0])).unwrap(),
            Certification::Certified(_)
        ));
    }

    #[test]
    fn non_members_are_rejected() {
        let r = fixtures::skewed_pair();
        assert_eq!(
            certify_decmin(&r, &IntVec(vec![2, 3])).unwrap_err(),
            Error::NotAMember
        );
    }

    #[test]
    fn modular_member_is_certified() {
        let w = [3i128, 0, 7];
        let p = SupermodularOracle::from_fn(GroundSet::new(3).unwrap(), move |x| {
            Ext::Finite(x.iter().map(|i| w[i]).sum())
        })
        .unwrap();
        assert!(matches!(
            certify_decmin(&p, &IntVec(vec![3, 0, 7])).unwrap(),
            Certification::Certified(_)
        ));
    }

    #[test]
    fn tampered_certificate_fails_the_check() {
        let q = fixtures::shifted_rank_two();
        let Certification::Certified(mut cert) =
            certify_decmin(&q, &IntVec(vec![2, 1, 1, 0])).unwrap()
        else {
            panic!("expected a certificate");
        };
        cert.chain.chain[0] = Subset::singleton(0);
        assert!(cert.check(&q).is_err());
    }
}
