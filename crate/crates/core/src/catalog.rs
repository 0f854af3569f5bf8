//! Named group constructors, group-spec parsing, and the sweep catalog.
//!
//! Spec grammar:
//!
//! * `C<n>` cyclic of order `n`
//! * `D<n>` dihedral of order `2n` (so `D4` has order 8)
//! * `S<n>`, `A<n>` symmetric and alternating on `n` points
//! * `Q8`, `SL(2,3)`
//! * `perm[<degree>]:<cycles>;<cycles>;...` explicit generators
//! * `<spec>x<spec>` direct product on disjoint point sets

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{GroupError, SpecError};
use crate::group::{generate_closure, FiniteGroup, DEGREE_CAP};
use crate::lattice::{all_subgroups, SubgroupLattice};
use crate::perm::{parse_cycles, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGroup {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    Sl23,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Named(NamedGroup),
    Generators {
        degree: usize,
        gens: Vec<Permutation>,
    },
    Product(Vec<GroupSpec>),
}

impl NamedGroup {
    pub fn order(self) -> usize {
        match self {
            NamedGroup::Cyclic(n) => n,
            NamedGroup::Dihedral(n) => 2 * n,
            NamedGroup::Symmetric(n) => (1..=n).product(),
            NamedGroup::Alternating(n) => ((1..=n).product::<usize>() / 2).max(1),
            NamedGroup::Quaternion => 8,
            NamedGroup::Sl23 => 24,
        }
    }

    fn degree(self) -> usize {
        match self {
            NamedGroup::Cyclic(n) | NamedGroup::Symmetric(n) | NamedGroup::Alternating(n) => n,
            NamedGroup::Dihedral(1) => 2,
            NamedGroup::Dihedral(2) => 4,
            NamedGroup::Dihedral(n) => n,
            NamedGroup::Quaternion | NamedGroup::Sl23 => 8,
        }
    }

    fn generators(self) -> Vec<Permutation> {
        let n = self.degree();
        let cyc = |s: &str| parse_cycles(s, n).expect("constructor cycles are valid");
        let long_cycle = || {
            let pts: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            cyc(&format!("({})", pts.join(" ")))
        };
        let gens = match self {
            NamedGroup::Cyclic(_) => vec![long_cycle()],
            NamedGroup::Dihedral(1) => vec![cyc("(1 2)")],
            NamedGroup::Dihedral(2) => vec![cyc("(1 2)(3 4)"), cyc("(1 3)(2 4)")],
            NamedGroup::Dihedral(_) => {
                let flip: Vec<usize> = (1..=n).rev().collect();
                vec![long_cycle(), Permutation::from_images(&flip).unwrap()]
            }
            NamedGroup::Symmetric(n) if n >= 3 => vec![cyc("(1 2)"), long_cycle()],
            NamedGroup::Symmetric(2) => vec![cyc("(1 2)")],
            NamedGroup::Alternating(n) if n >= 3 => {
                (3..=n).map(|k| cyc(&format!("(1 2 {k})"))).collect()
            }
            NamedGroup::Symmetric(_) | NamedGroup::Alternating(_) => vec![],
            NamedGroup::Quaternion => vec![cyc("(1 2 3 4)(5 6 7 8)"), cyc("(1 5 3 7)(2 8 4 6)")],
            NamedGroup::Sl23 => sl23_generators(),
        };
        if gens.is_empty() {
            vec![Permutation::identity(n)]
        } else {
            gens
        }
    }
}

/// `SL(2,3)` acting on the eight nonzero row vectors of `F_3^2`.
fn sl23_generators() -> Vec<Permutation> {
    let vectors: Vec<[u8; 2]> = (0..9u8)
        .map(|k| [k / 3, k % 3])
        .filter(|v| *v != [0, 0])
        .collect();
    let act = |m: [[u8; 2]; 2]| {
        let images: Vec<usize> = vectors
            .iter()
            .map(|v| {
                let w = [
                    (v[0] * m[0][0] + v[1] * m[1][0]) % 3,
                    (v[0] * m[0][1] + v[1] * m[1][1]) % 3,
                ];
                vectors.iter().position(|u| *u == w).unwrap() + 1
            })
            .collect();
        Permutation::from_images(&images).unwrap()
    };
    vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])]
}

impl fmt::Display for NamedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGroup::Cyclic(n) => write!(f, "C{n}"),
            NamedGroup::Dihedral(n) => write!(f, "D{n}"),
            NamedGroup::Symmetric(n) => write!(f, "S{n}"),
            NamedGroup::Alternating(n) => write!(f, "A{n}"),
            NamedGroup::Quaternion => f.write_str("Q8"),
            NamedGroup::Sl23 => f.write_str("SL(2,3)"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Named(n) => write!(f, "{n}"),
            GroupSpec::Generators { degree, gens } => {
                write!(f, "perm[{degree}]:")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            GroupSpec::Product(factors) => {
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_factor(text: &str) -> Result<GroupSpec, SpecError> {
    let t = text.trim();
    let malformed = || SpecError::Malformed(t.to_string());
    if let Some(rest) = t.strip_prefix("perm[") {
        let (deg, gens) = rest.split_once("]:").ok_or_else(malformed)?;
        let degree: usize = deg.trim().parse().map_err(|_| malformed())?;
        if degree == 0 {
            return Err(malformed());
        }
        let gens = parse_generator_list(gens, degree)?;
        return Ok(GroupSpec::Generators { degree, gens });
    }
    let upper = t.to_ascii_uppercase();
    if upper == "Q8" {
        return Ok(GroupSpec::Named(NamedGroup::Quaternion));
    }
    if upper.replace(' ', "") == "SL(2,3)" {
        return Ok(GroupSpec::Named(NamedGroup::Sl23));
    }
    let mut chars = upper.chars();
    let kind = chars.next().ok_or_else(malformed)?;
    let num = chars.as_str();
    let n: usize = match num.parse() {
        Ok(n) if n >= 1 => n,
        _ if matches!(kind, 'C' | 'D' | 'S' | 'A') => return Err(malformed()),
        _ => return Err(SpecError::UnknownGroup(t.to_string())),
    };
    let named = match kind {
        'C' => NamedGroup::Cyclic(n),
        'D' => NamedGroup::Dihedral(n),
        'S' => NamedGroup::Symmetric(n),
        'A' => NamedGroup::Alternating(n),
        _ => return Err(SpecError::UnknownGroup(t.to_string())),
    };
    Ok(GroupSpec::Named(named))
}

/// Generators separated by `;`, each in cycle notation. Empty text gives no generators.
pub fn parse_generator_list(text: &str, degree: usize) -> Result<Vec<Permutation>, GroupError> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_cycles(s, degree))
        .collect()
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let factors: Vec<GroupSpec> = s.split('x').map(parse_factor).collect::<Result<_, _>>()?;
        if factors.len() == 1 {
            Ok(factors.into_iter().next().unwrap())
        } else {
            Ok(GroupSpec::Product(factors))
        }
    }
}

impl GroupSpec {
    /// Known order, when the spec has a closed formula.
    pub fn expected_order(&self) -> Option<usize> {
        match self {
            GroupSpec::Named(n) => Some(n.order()),
            GroupSpec::Generators { .. } => None,
            GroupSpec::Product(fs) => fs.iter().map(|f| f.expected_order()).product(),
        }
    }

    fn parts(&self) -> (usize, Vec<Permutation>) {
        match self {
            GroupSpec::Named(n) => (n.degree(), n.generators()),
            GroupSpec::Generators { degree, gens } => {
                let gens = if gens.is_empty() {
                    vec![Permutation::identity(*degree)]
                } else {
                    gens.clone()
                };
                (*degree, gens)
            }
            GroupSpec::Product(fs) => {
                let parts: Vec<(usize, Vec<Permutation>)> = fs.iter().map(|f| f.parts()).collect();
                let degree: usize = parts.iter().map(|p| p.0).sum();
                let mut gens = Vec::new();
                let mut offset = 0;
                for (d, gs) in parts {
                    gens.extend(gs.iter().map(|g| g.shifted(offset, degree)));
                    offset += d;
                }
                (degree, gens)
            }
        }
    }

    /// Flattened product with `other`.
    pub fn times(&self, other: &GroupSpec) -> GroupSpec {
        let mut factors = Vec::new();
        for s in [self, other] {
            match s {
                GroupSpec::Product(fs) => factors.extend(fs.iter().cloned()),
                f => factors.push(f.clone()),
            }
        }
        GroupSpec::Product(factors)
    }
}

/// Builds the group described by `spec`, checking the degree cap, order cap and order formula.
pub fn build_group(spec: &GroupSpec, order_cap: usize) -> Result<FiniteGroup, SpecError> {
    let (degree, gens) = spec.parts();
    if degree > DEGREE_CAP {
        return Err(GroupError::DegreeCapExceeded {
            degree,
            cap: DEGREE_CAP,
        }
        .into());
    }
    let group = generate_closure(&gens, order_cap)?;
    if let Some(expected) = spec.expected_order() {
        assert_eq!(
            group.order(),
            expected,
            "constructor for {spec} produced the wrong order"
        );
    }
    Ok(group)
}

/// Isomorphism-invariant fingerprint used to skip duplicate catalog members.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    /// Element-order histogram of `G/G'`, which determines its abelian invariants.
    pub abelian_invariants: Vec<(usize, usize)>,
    pub subgroup_count: usize,
}

pub fn fingerprint(lattice: &SubgroupLattice) -> Fingerprint {
    let g = lattice.group();
    let derived = g.derived_subgroup(&g.all());
    let n = g.subgroup_from_set(derived).expect("derived subgroup");
    let q = g.quotient(&n).expect("derived subgroup is normal");
    let mut hist = std::collections::BTreeMap::new();
    for x in 0..q.group().order() {
        *hist.entry(q.group().element_order(x).unwrap()).or_insert(0) += 1;
    }
    Fingerprint {
        order: g.order(),
        abelian_invariants: hist.into_iter().collect(),
        subgroup_count: lattice.len(),
    }
}

/// One catalog member with its lattice.
pub struct CatalogEntry {
    pub label: String,
    pub spec: GroupSpec,
    pub lattice: Arc<SubgroupLattice>,
}

impl CatalogEntry {
    pub fn from_spec(spec: GroupSpec, order_cap: usize) -> Result<Self, SpecError> {
        let group = build_group(&spec, order_cap)?;
        let lattice = all_subgroups(Arc::new(group))?;
        Ok(CatalogEntry {
            label: spec.to_string(),
            spec,
            lattice: Arc::new(lattice),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.lattice.group()
    }
}

/// Named groups of order at most `max_order`, in the order they are preferred as labels.
pub fn named_groups(max_order: usize) -> Vec<NamedGroup> {
    let mut out: Vec<NamedGroup> = (1..=max_order).map(NamedGroup::Cyclic).collect();
    for n in 1.. {
        let g = NamedGroup::Symmetric(n);
        if g.order() > max_order {
            break;
        }
        out.push(g);
    }
    for n in 3.. {
        let g = NamedGroup::Alternating(n);
        if g.order() > max_order {
            break;
        }
        out.push(g);
    }
    out.extend((1..=max_order / 2).map(NamedGroup::Dihedral));
    for g in [NamedGroup::Quaternion, NamedGroup::Sl23] {
        if g.order() <= max_order {
            out.push(g);
        }
    }
    out
}

/// Named groups plus direct products up to `max_order`, deduplicated by
/// [`Fingerprint`] and sorted by (order, label).
pub fn catalog(max_order: usize, order_cap: usize) -> Result<Vec<CatalogEntry>, SpecError> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut seen: HashSet<Fingerprint> = HashSet::new();
    let mut admit = |entry: CatalogEntry, entries: &mut Vec<CatalogEntry>| {
        if seen.insert(fingerprint(&entry.lattice)) {
            entries.push(entry);
            true
        } else {
            false
        }
    };
    for g in named_groups(max_order.min(order_cap)) {
        let spec = GroupSpec::Named(g);
        if g.degree() > DEGREE_CAP {
            continue;
        }
        admit(CatalogEntry::from_spec(spec, order_cap)?, &mut entries);
    }
    // Products of admitted members until nothing new appears.
    let mut tried: HashSet<(String, String)> = HashSet::new();
    loop {
        let mut fresh = Vec::new();
        for i in 0..entries.len() {
            for j in i..entries.len() {
                let (a, b) = (&entries[i], &entries[j]);
                let order = a.group().order() * b.group().order();
                if a.group().order() == 1
                    || b.group().order() == 1
                    || order > max_order.min(order_cap)
                {
                    continue;
                }
                if a.group().degree() + b.group().degree() > DEGREE_CAP {
                    continue;
                }
                if !tried.insert((a.label.clone(), b.label.clone())) {
                    continue;
                }
                fresh.push(a.spec.times(&b.spec));
            }
        }
        let mut added = false;
        for spec in fresh {
            added |= admit(CatalogEntry::from_spec(spec, order_cap)?, &mut entries);
        }
        if !added {
            break;
        }
    }
    entries.sort_by(|a, b| {
        a.group()
            .order()
            .cmp(&b.group().order())
            .then_with(|| a.label.cmp(&b.label))
    });
    Ok(entries)
}
