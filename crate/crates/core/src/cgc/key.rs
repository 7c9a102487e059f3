use std::fmt;

use crate::qcore::HalfInt;
use crate::{Error, Result};

/// Labels (j1, m1, j2, m2, j, m) of one coefficient ⟨j1 m1, j2 m2 | j m⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CgcKey {
    pub j1: HalfInt,
    pub m1: HalfInt,
    pub j2: HalfInt,
    pub m2: HalfInt,
    pub j: HalfInt,
    pub m: HalfInt,
}

impl CgcKey {
    pub fn new(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Self {
        CgcKey { j1, m1, j2, m2, j, m }
    }

    /// Key from doubled labels [2j1, 2m1, 2j2, 2m2, 2j, 2m].
    pub fn from_twice(t: [i64; 6]) -> Self {
        let h = HalfInt::from_twice;
        CgcKey::new(h(t[0]), h(t[1]), h(t[2]), h(t[3]), h(t[4]), h(t[5]))
    }

    pub fn twice(&self) -> [i64; 6] {
        [self.j1, self.m1, self.j2, self.m2, self.j, self.m].map(|h| h.twice())
    }

    /// Parse six labels such as ["1/2", "1/2", "1", "0", "3/2", "1/2"].
    pub fn parse(labels: [&str; 6]) -> Result<Self> {
        let mut v = [HalfInt::ZERO; 6];
        for (slot, s) in v.iter_mut().zip(labels) {
            *slot = s.parse()?;
        }
        Ok(CgcKey::new(v[0], v[1], v[2], v[3], v[4], v[5]))
    }

    /// First violated selection rule, if any.
    pub fn selection_failure(&self) -> Option<&'static str> {
        let CgcKey { j1, m1, j2, m2, j, m } = *self;
        if j1.twice() < 0 || j2.twice() < 0 || j.twice() < 0 {
            return Some("selection: negative spin");
        }
        if m != m1 + m2 {
            return Some("selection: m ≠ m1+m2");
        }
        if !(j1 - m1).is_integer() || !(j2 - m2).is_integer() || !(j - m).is_integer() {
            return Some("selection: j_i - m_i not integral");
        }
        if m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
            return Some("selection: |m| exceeds j");
        }
        if !(j1 + j2 + j).is_integer() {
            return Some("selection: j1+j2+j not integral");
        }
        if j > j1 + j2 || j < (j1 - j2).abs() {
            return Some("selection: triangle rule");
        }
        None
    }

    pub fn is_admissible(&self) -> bool {
        self.selection_failure().is_none()
    }

    pub fn check(&self) -> Result<()> {
        match self.selection_failure() {
            None => Ok(()),
            Some(why) => Err(Error::Domain(format!("{}: {}", why, self))),
        }
    }

    /// j1 + j2 - j, an integer for admissible keys.
    pub fn n(&self) -> i64 {
        (self.j1 + self.j2 - self.j).int_unchecked()
    }

    /// Every admissible key with the given j1, j2, ordered by (j, m, m1).
    pub fn all_for(j1: HalfInt, j2: HalfInt) -> Vec<CgcKey> {
        let mut out = Vec::new();
        let mut j = (j1 - j2).abs();
        while j <= j1 + j2 {
            let mut m = -j;
            while m <= j {
                let mut m1 = -j1;
                while m1 <= j1 {
                    let k = CgcKey::new(j1, m1, j2, m - m1, j, m);
                    if k.is_admissible() {
                        out.push(k);
                    }
                    m1 = m1 + 1;
                }
                m = m + 1;
            }
            j = j + 1;
        }
        out
    }

    /// Admissible keys for all j1, j2 up to `cap` (in half steps).
    pub fn all_up_to(cap: HalfInt) -> Vec<CgcKey> {
        let mut out = Vec::new();
        for t1 in 0..=cap.twice() {
            for t2 in 0..=cap.twice() {
                out.extend(CgcKey::all_for(HalfInt::from_twice(t1), HalfInt::from_twice(t2)));
            }
        }
        out
    }
}

impl fmt::Display for CgcKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} {}, {} {} | {} {}>", self.j1, self.m1, self.j2, self.m2, self.j, self.m)
    }
}

/// Free-standing form of [`CgcKey::is_admissible`].
pub fn selection_rules(key: &CgcKey) -> bool {
    key.is_admissible()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules() {
        assert!(selection_rules(&CgcKey::from_twice([1, 1, 1, -1, 2, 0])));
        assert_eq!(
            CgcKey::from_twice([1, 1, 1, 1, 2, 0]).selection_failure(),
            Some("selection: m ≠ m1+m2")
        );
        assert!(!selection_rules(&CgcKey::from_twice([2, 0, 2, 0, 6, 0])));
        assert!(!selection_rules(&CgcKey::from_twice([2, 1, 2, -1, 2, 0])));
        assert!(!selection_rules(&CgcKey::from_twice([1, 1, 2, 0, 2, 1])));
    }

    #[test]
    fn enumeration() {
        let half = HalfInt::HALF;
        assert_eq!(CgcKey::all_for(half, half).len(), 6);
        assert!(CgcKey::all_up_to(HalfInt::int(1)).iter().all(|k| k.is_admissible()));
        let k = CgcKey::parse(["1/2", "1/2", "1", "0", "3/2", "1/2"]).unwrap();
        assert_eq!(k.twice(), [1, 1, 2, 0, 3, 1]);
        assert_eq!(k.to_string(), "<1/2 1/2, 1 0 | 3/2 1/2>");
    }
}
