//! Brute-force oracles over raw tables, written without the library's
//! lattice, prime or radical code paths. Every set is a bitmask over the
//! element indices, so carriers are limited to 16 elements.

#![allow(dead_code)]

use lcr_core::LcrTable;

/// The raw data of a table, read once through accessors.
pub struct Raw {
    pub n: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub e: usize,
    pub halo: Vec<usize>,
    /// `|halo| × |halo|`, by halo position.
    pub local: Vec<usize>,
    pub one: usize,
}

pub type Set = u32;

pub fn members(s: Set) -> Vec<usize> {
    (0..32).filter(|i| s >> i & 1 == 1).collect()
}

pub fn set_of(xs: &[usize]) -> Set {
    xs.iter().fold(0, |s, &x| s | 1 << x)
}

impl Raw {
    pub fn of(r: &LcrTable) -> Raw {
        assert!(r.order() <= 16, "oracle is limited to 16 elements");
        Raw {
            n: r.order(),
            add: r.carrier().add_table().to_vec(),
            mul: r.mul_table().to_vec(),
            e: r.left_identity(),
            halo: r.halo().to_vec(),
            local: r.local_mul_table().to_vec(),
            one: r.local_identity(),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn zero(&self) -> usize {
        (0..self.n).find(|&z| (0..self.n).all(|x| self.add(z, x) == x)).unwrap()
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.add(a, b) == self.zero()).unwrap()
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn full(&self) -> Set {
        ((1u64 << self.n) - 1) as Set
    }

    /// `{ x : x·e = 0 }` for the designated left identity.
    pub fn computed_halo(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.mul(x, self.e) == self.zero()).collect()
    }

    pub fn halo_set(&self) -> Set {
        set_of(&self.computed_halo())
    }

    pub fn sharp(&self, a: usize, b: usize) -> Option<usize> {
        let i = self.halo.iter().position(|&h| h == a)?;
        let j = self.halo.iter().position(|&h| h == b)?;
        Some(self.local[i * self.halo.len() + j])
    }

    /// Every element acting as a left identity.
    pub fn bar_units(&self) -> Vec<usize> {
        (0..self.n).filter(|&b| (0..self.n).all(|x| self.mul(b, x) == x)).collect()
    }

    /// Whether the law with the given name fails on the tuple.
    pub fn violates(&self, law: &str, w: &[usize]) -> bool {
        let n = self.n;
        let in_halo = |x: usize| self.halo.contains(&x);
        match (law, w) {
            ("associativity", &[x, y, z]) => self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)),
            ("left_distributivity", &[x, y, z]) => {
                self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z))
            }
            ("right_distributivity", &[x, y, z]) => {
                self.mul(self.add(x, y), z) != self.add(self.mul(x, z), self.mul(y, z))
            }
            ("left_commutativity", &[x, y, z]) => self.mul(self.mul(x, y), z) != self.mul(self.mul(y, x), z),
            ("left_identity", &[e, x]) => self.mul(e, x) != x,
            ("halo_membership", &[x]) => in_halo(x) != (self.mul(x, self.e) == self.zero()),
            ("local_closure", &[a, b]) => self.sharp(a, b).is_some_and(|p| !in_halo(p)),
            ("local_commutativity", &[a, b]) => self.sharp(a, b) != self.sharp(b, a),
            ("local_associativity", &[a, b, c]) => {
                self.sharp(a, b).and_then(|ab| self.sharp(ab, c)) != self.sharp(b, c).and_then(|bc| self.sharp(a, bc))
            }
            ("local_distributivity", &[a, b, c]) => {
                self.sharp(a, self.add(b, c)) != self.sharp(a, b).zip(self.sharp(a, c)).map(|(p, q)| self.add(p, q))
            }
            ("local_identity", &[one, a]) => self.sharp(one, a) != Some(a),
            ("triassociativity", &[x, a, b]) => {
                self.sharp(self.mul(x, a), b) != self.sharp(a, b).map(|ab| self.mul(x, ab))
            }
            _ => panic!("unknown law {law} with {} arguments (order {n})", w.len()),
        }
    }

    /// Every axiom over every tuple.
    pub fn axioms_hold(&self) -> bool {
        let all: Vec<usize> = (0..self.n).collect();
        let h = &self.halo;
        let triples = |xs: &[usize], ys: &[usize], zs: &[usize]| {
            let mut out = Vec::new();
            for &x in xs {
                for &y in ys {
                    for &z in zs {
                        out.push([x, y, z]);
                    }
                }
            }
            out
        };
        let t_all = triples(&all, &all, &all);
        for law in ["associativity", "left_distributivity", "right_distributivity", "left_commutativity"] {
            if t_all.iter().any(|t| self.violates(law, t)) {
                return false;
            }
        }
        if all.iter().any(|&x| self.violates("left_identity", &[self.e, x]) || self.violates("halo_membership", &[x])) {
            return false;
        }
        for &a in h {
            if self.violates("local_identity", &[self.one, a]) {
                return false;
            }
            for &b in h {
                if self.violates("local_closure", &[a, b]) || self.violates("local_commutativity", &[a, b]) {
                    return false;
                }
            }
        }
        for law in ["local_associativity", "local_distributivity"] {
            if triples(h, h, h).iter().any(|t| self.violates(law, t)) {
                return false;
            }
        }
        !triples(&all, h, h).iter().any(|t| self.violates("triassociativity", t))
    }

    pub fn is_subgroup(&self, s: Set) -> bool {
        let m = members(s);
        s >> self.zero() & 1 == 1 && m.iter().all(|&a| m.iter().all(|&b| s >> self.sub(a, b) & 1 == 1))
    }

    pub fn is_ideal(&self, s: Set) -> bool {
        if !self.is_subgroup(s) {
            return false;
        }
        let m = members(s);
        let absorbs = m.iter().all(|&i| (0..self.n).all(|r| s >> self.mul(r, i) & 1 == 1 && s >> self.mul(i, r) & 1 == 1));
        let local = m.iter().filter(|&&i| self.halo.contains(&i)).all(|&i| {
            self.halo.iter().all(|&a| self.sharp(a, i).is_some_and(|p| s >> p & 1 == 1))
        });
        absorbs && local
    }

    /// All ideals, by scanning every subset of the carrier.
    pub fn ideals(&self) -> Vec<Set> {
        (0..=self.full()).filter(|&s| self.is_ideal(s)).collect()
    }

    pub fn set_sum(&self, a: Set, b: Set) -> Set {
        let mut s = 0;
        for x in members(a) {
            for y in members(b) {
                s |= 1 << self.add(x, y);
            }
        }
        s
    }

    /// Primality straight from the definition: the sum condition, the
    /// product condition and the halo condition.
    pub fn is_prime(&self, p: Set) -> bool {
        if p == self.full() {
            return false;
        }
        let ph = self.set_sum(p, self.halo_set());
        let inn = |s: Set, x: usize| s >> x & 1 == 1;
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.mul(x, y);
                if inn(ph, xy) && !inn(ph, x) && !inn(ph, y) {
                    return false;
                }
                if inn(p, xy) && !inn(ph, x) && !inn(p, y) {
                    return false;
                }
            }
        }
        let h = self.halo_set();
        if p & h == h {
            return true;
        }
        let p1 = p & h;
        self.halo.iter().all(|&a| {
            self.halo.iter().all(|&b| !inn(p1, self.sharp(a, b).unwrap()) || inn(p1, a) || inn(p1, b))
        })
    }

    pub fn spectrum(&self) -> Vec<Set> {
        self.ideals().into_iter().filter(|&p| self.is_prime(p)).collect()
    }

    pub fn even_component(&self, x: usize, b: usize) -> usize {
        self.mul(x, b)
    }

    pub fn odd_component(&self, x: usize, b: usize) -> usize {
        self.sub(x, self.mul(x, b))
    }

    fn power_reaches(&self, x: usize, target: Set, step: impl Fn(usize, usize) -> usize) -> bool {
        let mut p = x;
        for _ in 0..=self.n {
            if target >> p & 1 == 1 {
                return true;
            }
            p = step(p, x);
        }
        false
    }

    /// Some `x₀ᵐ ∈ I₀` and some `x₁^♯k ∈ I₁`, components taken against `b`.
    pub fn in_radical(&self, i: Set, x: usize, b: usize) -> bool {
        let (x0, x1) = (self.even_component(x, b), self.odd_component(x, b));
        self.power_reaches(x0, i, |p, y| self.mul(p, y)) && self.power_reaches(x1, i, |p, y| self.sharp(p, y).unwrap())
    }

    pub fn radical(&self, i: Set, b: usize) -> Set {
        set_of(&(0..self.n).filter(|&x| self.in_radical(i, x, b)).collect::<Vec<_>>())
    }

    /// `xᵐ = 0` for some `m` and `x₁` is `♯`-nilpotent.
    pub fn is_nilpotent(&self, x: usize, b: usize) -> bool {
        let zero = 1 << self.zero();
        self.power_reaches(x, zero, |p, y| self.mul(p, y))
            && self.power_reaches(self.odd_component(x, b), zero, |p, y| self.sharp(p, y).unwrap())
    }
}

/// Classical commutative-ring computations on the product table alone.
pub struct Classical<'a>(pub &'a Raw);

impl Classical<'_> {
    pub fn ideals(&self) -> Vec<Set> {
        let r = self.0;
        (0..=r.full())
            .filter(|&s| r.is_subgroup(s) && members(s).iter().all(|&i| (0..r.n).all(|x| s >> r.mul(x, i) & 1 == 1)))
            .collect()
    }

    pub fn is_prime(&self, p: Set) -> bool {
        let r = self.0;
        p != r.full()
            && (0..r.n).all(|a| (0..r.n).all(|b| p >> r.mul(a, b) & 1 == 0 || p >> a & 1 == 1 || p >> b & 1 == 1))
    }

    pub fn spectrum(&self) -> Vec<Set> {
        self.ideals().into_iter().filter(|&p| self.is_prime(p)).collect()
    }

    pub fn radical(&self, i: Set) -> Set {
        let r = self.0;
        set_of(&(0..r.n).filter(|&x| r.power_reaches(x, i, |p, y| r.mul(p, y))).collect::<Vec<_>>())
    }

    pub fn nilradical(&self) -> Set {
        self.radical(1 << self.0.zero())
    }

    /// Closed sets `V(I)` as sets of positions in `spectrum`.
    pub fn zariski(&self, spectrum: &[Set]) -> Vec<Vec<usize>> {
        let mut closed: Vec<Vec<usize>> = self
            .ideals()
            .into_iter()
            .map(|i| (0..spectrum.len()).filter(|&k| spectrum[k] & i == i).collect())
            .collect();
        closed.sort();
        closed.dedup();
        closed
    }
}
