//! The unit group `(Z/f)^x` with discrete logs, and Dirichlet characters.

use super::number::CycloNumber;
use crate::error::Error;
use crate::groupring::{CharacterOfG, FiniteAbelianGroup, GroupElement};
use crate::Result;
use num_traits::One;
use std::collections::HashMap;

/// `(Z/f)^x` as an explicit product of cyclic groups with a generator list
/// and a full discrete-log table.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: u64,
    group: FiniteAbelianGroup,
    generators: Vec<u64>,
    dlog: HashMap<u64, GroupElement>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    b = acc as u64;
    b
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut o = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        o += 1;
    }
    o
}

fn primitive_root_mod_prime_power(p: u64, e: u32) -> u64 {
    let pe = p.pow(e);
    let phi = pe / p * (p - 1);
    // find a primitive root mod p, then lift
    let g = (2..p)
        .find(|&g| multiplicative_order(g, p) == p - 1)
        .expect("primitive root exists");
    if e == 1 {
        return g;
    }
    if multiplicative_order(g, pe) == phi {
        g
    } else {
        g + p
    }
}

// CRT combine: x = a mod m1, x = 1 mod m2 (m1, m2 coprime)
fn crt_one(a: u64, m1: u64, m2: u64) -> u64 {
    if m2 == 1 {
        return a % m1;
    }
    let inv = mod_inverse(m1 % m2, m2);
    let t = ((1 + m2 - a % m2) % m2) as u128 * inv as u128 % m2 as u128;
    ((a as u128 + m1 as u128 * t) % (m1 as u128 * m2 as u128)) as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m as i128) as u64
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let mut factor_gens: Vec<(u64, u64)> = Vec::new(); // (order, residue mod modulus)
        for (p, e) in factorize(modulus) {
            let pe = p.pow(e);
            let rest = modulus / pe;
            if p == 2 {
                match e {
                    1 => {}
                    2 => {
                        factor_gens.push((2, crt_one(3, pe, rest)));
                    }
                    _ => {
                        factor_gens.push((2, crt_one(pe - 1, pe, rest)));
                        factor_gens.push((pe / 4, crt_one(5, pe, rest)));
                    }
                }
            } else {
                let g = primitive_root_mod_prime_power(p, e);
                let phi = pe / p * (p - 1);
                factor_gens.push((phi, crt_one(g, pe, rest)));
            }
        }
        if factor_gens.is_empty() {
            factor_gens.push((1, 1 % modulus.max(1)));
        }
        let orders: Vec<u64> = factor_gens.iter().map(|&(o, _)| o).collect();
        let generators: Vec<u64> = factor_gens.iter().map(|&(_, g)| g).collect();
        let group = FiniteAbelianGroup::new(orders);
        let mut dlog = HashMap::new();
        for el in group.elements() {
            let mut x: u64 = 1 % modulus.max(1);
            for (gi, &e) in generators.iter().zip(el.exponents()) {
                x = (x as u128 * pow_mod(*gi, e, modulus.max(2)) as u128
                    % modulus.max(2) as u128) as u64;
            }
            if modulus == 1 {
                x = 0;
            }
            dlog.insert(x, el);
        }
        UnitGroup {
            modulus,
            group,
            generators,
            dlog,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Discrete log of a residue coprime to the modulus.
    pub fn dlog(&self, a: u64) -> Option<GroupElement> {
        self.dlog.get(&(a % self.modulus.max(1))).cloned()
    }

    /// The residue represented by an abstract element.
    pub fn residue(&self, el: &GroupElement) -> u64 {
        if self.modulus == 1 {
            return 0;
        }
        let mut x: u64 = 1 % self.modulus;
        for (gi, &e) in self.generators.iter().zip(el.exponents()) {
            x = (x as u128 * pow_mod(*gi, e, self.modulus) as u128 % self.modulus as u128) as u64;
        }
        x
    }

    /// All coprime residues (in dlog-table order is unspecified; sorted).
    pub fn residues(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.dlog.keys().copied().collect();
        v.sort();
        v
    }

    /// Complex conjugation, the class of `-1`.
    pub fn minus_one(&self) -> GroupElement {
        if self.modulus <= 2 {
            return self.group.identity();
        }
        self.dlog(self.modulus - 1).expect("-1 is a unit")
    }
}

/// A Dirichlet character mod `f`, backed by a character of `(Z/f)^x`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletChar {
    modulus: u64,
    chi: CharacterOfG,
    conductor: u64,
}

impl DirichletChar {
    pub fn from_character(units: &UnitGroup, chi: CharacterOfG) -> Self {
        assert_eq!(chi.group(), units.group());
        let conductor = conductor_of(units, &chi);
        DirichletChar {
            modulus: units.modulus(),
            chi,
            conductor,
        }
    }

    pub fn all(units: &UnitGroup) -> Vec<DirichletChar> {
        CharacterOfG::all(units.group())
            .into_iter()
            .map(|chi| DirichletChar::from_character(units, chi))
            .collect()
    }

    pub fn trivial(units: &UnitGroup) -> Self {
        DirichletChar::from_character(units, CharacterOfG::trivial(units.group()))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }

    pub fn order(&self) -> u64 {
        self.chi.order()
    }

    pub fn character(&self) -> &CharacterOfG {
        &self.chi
    }

    /// `chi(a)`, zero when `gcd(a, f) > 1`.
    pub fn value(&self, units: &UnitGroup, a: u64) -> CycloNumber {
        match units.dlog(a % self.modulus.max(1)) {
            Some(el) => self.chi.value(&el),
            None => CycloNumber::from_int(0),
        }
    }

    /// Whether `chi(-1) = -1`.
    pub fn is_odd(&self, units: &UnitGroup) -> bool {
        self.chi.value(&units.minus_one()) == CycloNumber::from_int(-1)
    }

    pub fn inverse(&self) -> DirichletChar {
        DirichletChar {
            modulus: self.modulus,
            chi: self.chi.inverse(),
            conductor: self.conductor,
        }
    }

    /// The primitive character of the same conductor: values on residues
    /// coprime to the conductor, via a shifted representative coprime to the
    /// full modulus.
    pub fn primitive_value(&self, units: &UnitGroup, a: u64) -> Result<CycloNumber> {
        let c = self.conductor;
        if c == 1 {
            return Ok(CycloNumber::one());
        }
        if num_integer::gcd(a % c, c) != 1 {
            return Ok(CycloNumber::from_int(0));
        }
        // find b = a (mod c) with gcd(b, modulus) = 1
        let mut b = a % c;
        for _ in 0..=self.modulus / c + 1 {
            if b > 0 && num_integer::gcd(b, self.modulus) == 1 {
                return Ok(self.value(units, b));
            }
            b += c;
        }
        Err(Error::BadInstance(format!(
            "no representative of {a} mod {c} coprime to {}",
            self.modulus
        )))
    }
}

/// Smallest `d | f` such that `chi` is trivial on units congruent to 1 mod
/// `d`.
fn conductor_of(units: &UnitGroup, chi: &CharacterOfG) -> u64 {
    let f = units.modulus();
    let mut divisors: Vec<u64> = (1..=f).filter(|d| f % d == 0).collect();
    divisors.sort();
    'next: for d in divisors {
        for a in units.residues() {
            if a % d == 1 % d.max(1) {
                let el = units.dlog(a).unwrap();
                if !chi.value(&el).is_one() {
                    continue 'next;
                }
            }
        }
        return d;
    }
    f
}
