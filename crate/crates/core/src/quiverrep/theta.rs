use crate::conflation::ext_space;
use crate::error::{Error, Result};

use super::Representation;

/// An ordered family `Θ(1), …, Θ(t)` of nonzero representations with
/// `Ext(Θ(j), Θ(i)) = 0` whenever `j ≥ i`. Indices are 0-based here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaFamily {
    members: Vec<Representation>,
}

impl ThetaFamily {
    pub fn new(members: Vec<Representation>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidTheta("the family is empty".into()));
        };
        for (i, m) in members.iter().enumerate() {
            first.check_compatible(m)?;
            if m.is_zero() {
                return Err(Error::InvalidTheta(format!("member {} is zero", i + 1)));
            }
        }
        for i in 0..members.len() {
            for j in i..members.len() {
                let dim = ext_space(&members[j], &members[i])?.dim();
                if dim != 0 {
                    return Err(Error::ThetaOrdering {
                        later: j + 1,
                        earlier: i + 1,
                        dim,
                    });
                }
            }
        }
        Ok(ThetaFamily { members })
    }

    pub fn members(&self) -> &[Representation] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Representation {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn ordering_condition() {
        let a = a2(2);
        assert!(ThetaFamily::new(vec![a.s1.clone(), a.s2.clone()]).is_ok());
        assert!(ThetaFamily::new(vec![a.s1.clone(), a.p1.clone()]).is_ok());
        assert_eq!(
            ThetaFamily::new(vec![a.s2.clone(), a.s1.clone()]),
            Err(Error::ThetaOrdering { later: 2, earlier: 1, dim: 1 })
        );
        assert!(ThetaFamily::new(vec![]).is_err());
        let zero = Representation::zero(a.quiver.clone(), a.field);
        assert!(ThetaFamily::new(vec![zero]).is_err());
        // Repeated members are allowed.
        assert!(ThetaFamily::new(vec![a.s1.clone(), a.s1.clone()]).is_ok());
    }
}
