//! Finite groups of order at most 64, materialized as validated Cayley
//! tables over a fixed element ordering with the identity first.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    Cyclic(usize),
    Dihedral(usize),
    Custom,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupFamily::Dihedral(k) => write!(f, "dihedral:{k}"),
            GroupFamily::Custom => f.write_str("custom"),
        }
    }
}

/// A finite group `g_1 = 1, g_2, …, g_n`.
///
/// `table[i * n + j]` is the (0-based) index of `g_i · g_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    n: usize,
    names: Vec<String>,
    table: Vec<usize>,
    inv: Vec<usize>,
    family: GroupFamily,
}

impl GroupDescriptor {
    pub fn cyclic(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::param("cyclic group order must be at least 1"));
        }
        let names = (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let table = (0..k * k).map(|t| (t / k + t % k) % k).collect();
        Self::build(names, table, GroupFamily::Cyclic(k))
    }

    /// `D_k = ⟨r, s | r^k = s^2 = 1, srs = r^{-1}⟩` of order `2k`, ordered
    /// `1, r, …, r^{k-1}, s, sr, …, sr^{k-1}`.
    pub fn dihedral(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::param("dihedral group needs k >= 3"));
        }
        let n = 2 * k;
        let mut names = Vec::with_capacity(n);
        for reflection in [false, true] {
            for i in 0..k {
                let rot = match i {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r^{i}"),
                };
                names.push(match (reflection, i) {
                    (false, 0) => "1".to_string(),
                    (false, _) => rot,
                    (true, _) => format!("s{rot}"),
                });
            }
        }
        // Element s^a r^b has index a*k + b. Using r^b s = s r^{-b}:
        // (s^a r^b)(s^c r^d) = s^{a+c} r^{(-1)^c b + d}.
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            let (a, b) = (i / k, i % k);
            for j in 0..n {
                let (c, d) = (j / k, j % k);
                let rot = if c == 1 { (k - b + d) % k } else { (b + d) % k };
                table.push(((a + c) % 2) * k + rot);
            }
        }
        Self::build(names, table, GroupFamily::Dihedral(k))
    }

    /// Builds a custom group from names and a 0-based Cayley table,
    /// validating every group axiom.
    pub fn from_table(names: Vec<String>, table: Vec<usize>) -> Result<Self> {
        Self::build(names, table, GroupFamily::Custom)
    }

    fn build(names: Vec<String>, table: Vec<usize>, family: GroupFamily) -> Result<Self> {
        let n = names.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::param(format!("group order {n} not in 1..={MAX_ORDER}")));
        }
        if table.len() != n * n {
            return Err(Error::Structure(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= n) {
            return Err(Error::Structure(format!("table entry {bad} out of range")));
        }
        let at = |i: usize, j: usize| table[i * n + j];
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[at(i, j)], true) {
                    return Err(Error::Structure(format!("row {} repeats an entry", i + 1)));
                }
                if std::mem::replace(&mut col_seen[at(j, i)], true) {
                    return Err(Error::Structure(format!("column {} repeats an entry", i + 1)));
                }
            }
        }
        if (0..n).any(|j| at(0, j) != j || at(j, 0) != j) {
            return Err(Error::Ordering("the first element must be the identity".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::Structure(format!(
                            "associativity fails for ({}, {}, {})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        let inv = (0..n)
            .map(|i| (0..n).find(|&j| at(i, j) == 0).expect("Latin square row contains identity"))
            .collect();
        Ok(GroupDescriptor { n, names, table, inv, family })
    }

    /// Parses the text form: `n=<int>`, a line of element names, then `n`
    /// rows of `n` 1-based indices.
    pub fn from_cayley_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Structure("empty table file".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Structure(format!("bad header line {header:?}")))?;
        if n == 0 || n > MAX_ORDER {
            return Err(Error::param(format!("group order {n} not in 1..={MAX_ORDER}")));
        }
        let names: Vec<String> = lines
            .next()
            .ok_or_else(|| Error::Structure("missing names line".into()))?
            .split_whitespace()
            .map(String::from)
            .collect();
        if names.len() != n {
            return Err(Error::Structure(format!("expected {n} names, found {}", names.len())));
        }
        let mut table = Vec::with_capacity(n * n);
        for r in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Structure(format!("missing table row {}", r + 1)))?;
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().ok().filter(|&v| (1..=n).contains(&v)).map(|v| v - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Structure(format!("bad entry in table row {}", r + 1)))?;
            if row.len() != n {
                return Err(Error::Structure(format!("table row {} has {} entries", r + 1, row.len())));
            }
            table.extend(row);
        }
        if lines.next().is_some() {
            return Err(Error::Structure("extra lines after table".into()));
        }
        Self::from_table(names, table)
    }

    pub fn to_cayley_text(&self) -> String {
        let mut out = format!("n={}\n{}\n", self.n, self.names.join(" "));
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| (self.mul(i, j) + 1).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `g_i · g_j`.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|i| self.element_order(i) == self.n)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.family, self.n)
    }
}
