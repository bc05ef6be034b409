//! Named group constructors, file ingestion, and the curated test corpus.

mod corpus;
mod format;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub use corpus::{distinguished_subgroups, test_corpus, CorpusEntry};
pub use format::{
    emit_permutations, parse_cycles, parse_permutations, read_cayley, write_cayley, PermFile,
};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// Where a group comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Named { name: NamedGroup, params: Vec<u64> },
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    PermFile(PathBuf),
    TableFile(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGroup {
    Cyclic,
    Dihedral,
    Quaternion,
    Symmetric,
    Alternating,
    ElementaryAbelian,
}

impl NamedGroup {
    fn keyword(self) -> &'static str {
        match self {
            NamedGroup::Cyclic => "cyclic",
            NamedGroup::Dihedral => "dihedral",
            NamedGroup::Quaternion => "quaternion_generalized",
            NamedGroup::Symmetric => "symmetric",
            NamedGroup::Alternating => "alternating",
            NamedGroup::ElementaryAbelian => "elementary_abelian",
        }
    }

    fn arity(self) -> usize {
        if self == NamedGroup::ElementaryAbelian {
            2
        } else {
            1
        }
    }
}

impl GroupSpec {
    pub fn named(name: NamedGroup, params: &[u64]) -> Self {
        GroupSpec::Named {
            name,
            params: params.to_vec(),
        }
    }

    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Named { name, params } => {
                let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                write!(f, "{}({})", name.keyword(), ps.join(","))
            }
            GroupSpec::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
            GroupSpec::PermFile(p) => write!(f, "perm:{}", p.display()),
            GroupSpec::TableFile(p) => write!(f, "table:{}", p.display()),
        }
    }
}

fn split_top_level(args: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in args.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(args[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(args[start..].trim());
    out
}

/// Accepts `cyclic(6)`, `dihedral(8)`, `quaternion_generalized(8)`,
/// `symmetric(4)`, `alternating(5)`, `elementary_abelian(2,3)`,
/// `direct_product(A,B)`, `perm:PATH`, `table:PATH`, and the short forms
/// `C6`, `D8`, `Q8`, `S4`, `A5` (the number after `D` and `Q` is the order).
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::Usage(format!("unknown group {s:?}"));
        if let Some(path) = s.strip_prefix("perm:") {
            return Ok(GroupSpec::PermFile(path.into()));
        }
        if let Some(path) = s.strip_prefix("table:") {
            return Ok(GroupSpec::TableFile(path.into()));
        }
        if let Some((head, rest)) = s.split_once('(') {
            let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
            let head = head.trim();
            if head == "direct_product" {
                let parts = split_top_level(inner);
                let [a, b] = parts.as_slice() else {
                    return Err(Error::Usage("direct_product takes two groups".into()));
                };
                return Ok(GroupSpec::product(a.parse()?, b.parse()?));
            }
            let name = match head {
                "cyclic" => NamedGroup::Cyclic,
                "dihedral" => NamedGroup::Dihedral,
                "quaternion" | "quaternion_generalized" => NamedGroup::Quaternion,
                "symmetric" => NamedGroup::Symmetric,
                "alternating" => NamedGroup::Alternating,
                "elementary_abelian" => NamedGroup::ElementaryAbelian,
                _ => return Err(unknown()),
            };
            let params: Vec<u64> = split_top_level(inner)
                .iter()
                .map(|p| {
                    p.parse()
                        .map_err(|_| Error::Usage(format!("bad parameter {p:?} in {s:?}")))
                })
                .collect::<Result<_>>()?;
            if params.len() != name.arity() {
                return Err(Error::Usage(format!(
                    "{} takes {} parameter(s)",
                    name.keyword(),
                    name.arity()
                )));
            }
            return Ok(GroupSpec::Named { name, params });
        }
        let (letter, digits) =
            s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
        let v: u64 = digits.parse().map_err(|_| unknown())?;
        let name = match letter {
            "C" => NamedGroup::Cyclic,
            "D" => NamedGroup::Dihedral,
            "Q" => NamedGroup::Quaternion,
            "S" => NamedGroup::Symmetric,
            "A" => NamedGroup::Alternating,
            _ => return Err(unknown()),
        };
        Ok(GroupSpec::Named {
            name,
            params: vec![v],
        })
    }
}

fn cycle(points: impl IntoIterator<Item = usize>) -> Vec<usize> {
    points.into_iter().collect()
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Right-regular representation of `Q_{4n} = <a, b | a^{2n}, b^2 = a^n, a^b = a^-1>`.
fn quaternion_generators(n: usize) -> (usize, Vec<Permutation>) {
    let m = 2 * n;
    let degree = 2 * m;
    // element a^i b^j lives at index i + m*j
    let mul = |x: usize, y: usize| -> usize {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        match (j, l) {
            (0, l) => (i + k) % m + m * l,
            (_, 0) => (i + m - k) % m + m,
            _ => (i + m - k + n) % m,
        }
    };
    let right = |y: usize| {
        Permutation::from_images((0..degree).map(|x| mul(x, y) as u32).collect())
            .expect("regular action is bijective")
    };
    (degree, vec![right(1), right(m)])
}

fn named_generators(name: NamedGroup, params: &[u64]) -> Result<(usize, Vec<Permutation>)> {
    let range = |msg: &str| Err(Error::Usage(format!("{}: {msg}", name.keyword())));
    let p0 = params[0] as usize;
    let gens = |degree: usize, cycles: Vec<Vec<Vec<usize>>>| {
        let perms = cycles
            .iter()
            .map(|c| Permutation::from_cycles(degree, c).expect("disjoint cycles"))
            .collect();
        Ok((degree, perms))
    };
    match name {
        NamedGroup::Cyclic => {
            if p0 == 0 {
                return range("order must be at least 1");
            }
            if p0 == 1 {
                return Ok((1, vec![]));
            }
            gens(p0, vec![vec![cycle(0..p0)]])
        }
        NamedGroup::Dihedral => {
            if p0 < 2 || p0 % 2 == 1 {
                return range("order must be even and at least 2");
            }
            match p0 / 2 {
                1 => gens(2, vec![vec![vec![0, 1]]]),
                2 => gens(4, vec![vec![vec![0, 1]], vec![vec![2, 3]]]),
                k => {
                    let reflection: Vec<Vec<usize>> = (1..k)
                        .take_while(|&i| i < k - i)
                        .map(|i| vec![i, k - i])
                        .collect();
                    gens(k, vec![vec![cycle(0..k)], reflection])
                }
            }
        }
        NamedGroup::Quaternion => {
            if p0 < 4 || !p0.is_multiple_of(4) {
                return range("order must be a multiple of 4");
            }
            Ok(quaternion_generators(p0 / 4))
        }
        NamedGroup::Symmetric => match p0 {
            0 | 7.. => range("degree must be between 1 and 6"),
            1 => Ok((1, vec![])),
            2 => gens(2, vec![vec![vec![0, 1]]]),
            k => gens(k, vec![vec![vec![0, 1]], vec![cycle(0..k)]]),
        },
        NamedGroup::Alternating => match p0 {
            0 | 7.. => range("degree must be between 1 and 6"),
            1 | 2 => Ok((p0, vec![])),
            k => gens(k, (2..k).map(|i| vec![vec![0, 1, i]]).collect()),
        },
        NamedGroup::ElementaryAbelian => {
            let (p, k) = (params[0], params[1] as usize);
            if !is_prime(p) {
                return range("p must be prime");
            }
            if k == 0 {
                return Ok((1, vec![]));
            }
            let p = p as usize;
            gens(
                p * k,
                (0..k).map(|i| vec![cycle(i * p..(i + 1) * p)]).collect(),
            )
        }
    }
}

/// Builds a group from a spec. File specs are read from disk.
pub fn build(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    let g = match spec {
        GroupSpec::Named { name, params } => {
            let (degree, perms) = named_generators(*name, params)?;
            FiniteGroup::close_generators(degree, &perms, cap)?
        }
        GroupSpec::DirectProduct(a, b) => {
            FiniteGroup::direct_product(&build(a, cap)?, &build(b, cap)?, cap)?
        }
        GroupSpec::PermFile(path) => {
            let file = parse_permutations(&std::fs::read_to_string(path)?)?;
            FiniteGroup::close_generators(file.degree, &file.perms, cap)?
        }
        GroupSpec::TableFile(path) => {
            let g = read_cayley(&std::fs::read_to_string(path)?)?;
            if g.order() > cap {
                return Err(Error::SizeLimit { cap });
            }
            g
        }
    };
    Ok(g.with_source(spec.to_string()))
}

/// Builds a named (non-file) group; file specs are rejected.
pub fn build_named(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup> {
    fn has_file(spec: &GroupSpec) -> bool {
        match spec {
            GroupSpec::PermFile(_) | GroupSpec::TableFile(_) => true,
            GroupSpec::DirectProduct(a, b) => has_file(a) || has_file(b),
            GroupSpec::Named { .. } => false,
        }
    }
    if has_file(spec) {
        return Err(Error::Usage(format!("{spec} is not a named group")));
    }
    build(spec, cap)
}

/// Parses and builds in one step.
pub fn group(spec: &str) -> Result<FiniteGroup> {
    build(&spec.parse()?, crate::group::DEFAULT_ORDER_CAP)
}

/// Generators of a permutation-file or named spec, without enumerating the group.
pub fn permutation_generators(spec: &GroupSpec) -> Result<(usize, Vec<Permutation>)> {
    match spec {
        GroupSpec::Named { name, params } => named_generators(*name, params),
        GroupSpec::PermFile(path) => {
            let f = parse_permutations(&std::fs::read_to_string(path)?)?;
            Ok((f.degree, f.perms))
        }
        GroupSpec::DirectProduct(a, b) => {
            let (da, ga) = permutation_generators(a)?;
            let (db, gb) = permutation_generators(b)?;
            let mut perms: Vec<Permutation> = ga
                .iter()
                .map(|p| p.disjoint_sum(&Permutation::identity(db)))
                .collect();
            perms.extend(gb.iter().map(|p| Permutation::identity(da).disjoint_sum(p)));
            Ok((da + db, perms))
        }
        GroupSpec::TableFile(_) => Err(Error::Usage(
            "table files carry no permutation generators".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP as CAP;

    fn b(s: &str) -> FiniteGroup {
        build_named(&s.parse().unwrap(), CAP).unwrap()
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "cyclic(6)",
            "elementary_abelian(2,3)",
            "direct_product(cyclic(2),symmetric(3))",
            "perm:/tmp/x",
        ] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert_eq!(
            "Q8".parse::<GroupSpec>().unwrap().to_string(),
            "quaternion_generalized(8)"
        );
        assert!("frobenius(20)".parse::<GroupSpec>().is_err());
        assert!("cyclic(2,3)".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn builder_examples() {
        assert_eq!(b("cyclic(1)").order(), 1);
        let d = b("dihedral(8)");
        assert_eq!(d.order(), 8);
        assert_eq!(d.conjugacy().classes().len(), 5);
        let p = b("direct_product(cyclic(2),cyclic(3))");
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert!((0..6).any(|x| p.element_order(x) == 6));
    }

    #[test]
    fn builder_orders() {
        for (s, n) in [
            ("S1", 1),
            ("S2", 2),
            ("S3", 6),
            ("S6", 720),
            ("A3", 3),
            ("A4", 12),
            ("A5", 60),
            ("D2", 2),
            ("D4", 4),
            ("D10", 10),
            ("Q8", 8),
            ("Q12", 12),
            ("Q16", 16),
            ("elementary_abelian(3,2)", 9),
        ] {
            assert_eq!(b(s).order(), n, "{s}");
        }
    }

    #[test]
    fn builder_contracts() {
        for k in 2..=12u64 {
            let d = b(&format!("dihedral({})", 2 * k));
            assert_eq!(d.exponent(), num_integer::lcm(k, 2), "dihedral({})", 2 * k);
        }
        for n in 1..=6 {
            let q = b(&format!("quaternion_generalized({})", 4 * n));
            let involutions = (0..q.order()).filter(|&x| q.element_order(x) == 2).count();
            assert_eq!(involutions, 1);
        }
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(build_named(&"symmetric(7)".parse().unwrap(), CAP).is_err());
        assert!(build_named(&"dihedral(7)".parse().unwrap(), CAP).is_err());
        assert!(build_named(&"elementary_abelian(4,2)".parse().unwrap(), CAP).is_err());
        assert!(matches!(
            build_named(&"S6".parse().unwrap(), 100),
            Err(Error::SizeLimit { cap: 100 })
        ));
    }

    #[test]
    fn builders_satisfy_axioms() {
        for s in ["S4", "Q16", "D12", "A4", "direct_product(Q8,cyclic(3))"] {
            b(s).check_axioms().unwrap();
        }
    }
}
