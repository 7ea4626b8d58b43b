//! The checked statements. Each family id (e.g. `T-REG-MIDDLE`) expands to
//! one [`Statement`] per variant.

use std::fmt;

use serde::Serialize;

use super::expr::{compose, join, join_star, meet, meet_star, one, prod, star, var, Expr};
use crate::ideals::IdealKind;
use crate::laws;
use crate::magma::CayleyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Regular,
    IntraRegular,
    RegularAndIntraRegular,
}

impl Property {
    pub fn holds(self, t: &CayleyTable) -> bool {
        match self {
            Property::Regular => laws::is_regular(t),
            Property::IntraRegular => laws::is_intra_regular(t),
            Property::RegularAndIntraRegular => laws::is_regular(t) && laws::is_intra_regular(t),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Regular => "regular",
            Property::IntraRegular => "intra-regular",
            Property::RegularAndIntraRegular => "regular and intra-regular",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub weakly_regular: bool,
    pub left_identity: bool,
}

impl Hypotheses {
    pub const NONE: Hypotheses = Hypotheses {
        weakly_regular: false,
        left_identity: false,
    };
    pub const WEAKLY_REGULAR_WITH_IDENTITY: Hypotheses = Hypotheses {
        weakly_regular: true,
        left_identity: true,
    };

    /// The first unmet hypothesis, if any. Every structure must also be an
    /// LA-semigroup.
    pub fn missing(&self, t: &CayleyTable) -> Option<&'static str> {
        if !laws::is_la_semigroup(t) {
            return Some("left invertive law");
        }
        if self.weakly_regular && !laws::is_weakly_regular(t) {
            return Some("weak regularity");
        }
        if self.left_identity && laws::left_identities(t).is_empty() {
            return Some("left identity");
        }
        None
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = vec!["la-semigroup"];
        if self.weakly_regular {
            out.push("weakly regular");
        }
        if self.left_identity {
            out.push("left identity");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cmp {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Cmp {
    #[inline]
    pub fn holds<T: Ord>(self, a: T, b: T) -> bool {
        match self {
            Cmp::Le => a <= b,
            Cmp::Ge => a >= b,
            Cmp::Eq => a == b,
        }
    }

    pub fn flipped(self) -> Cmp {
        match self {
            Cmp::Le => Cmp::Ge,
            Cmp::Ge => Cmp::Le,
            Cmp::Eq => Cmp::Eq,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Le => "≤",
            Cmp::Ge => "≥",
            Cmp::Eq => "=",
        }
    }
}

/// What a quantified fuzzy variable ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Any,
    Kind(IdealKind),
}

impl Role {
    pub fn describe(self) -> String {
        match self {
            Role::Any => "any fuzzy subset".into(),
            Role::Kind(k) => k.name().into(),
        }
    }
}

/// `left cmp right` for all variables drawn from `roles`; if `property` is
/// set the statement is the biconditional "property ⟺ identity".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub property: Option<Property>,
    pub roles: Vec<Role>,
    pub left: Expr,
    pub right: Expr,
    pub cmp: Cmp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrispClaim {
    /// `R ∩ L = LR` for every left ideal `L` and right ideal `R`.
    MeetIsProduct,
    /// `L ∩ R ⊆ LR`.
    MeetInProduct,
    /// `QQ = Q` for every quasi-ideal `Q`.
    QuasiIdempotent,
    /// `A ∩ B = BA` for every left ideal `A` and right ideal `B`.
    MeetIsReversedProduct,
    /// `(AS)A = A` for every quasi-ideal `A`.
    QuasiSandwich,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CharClaim {
    Meet,
    Join,
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    Crisp { property: Property, claim: CrispClaim },
    /// Every fuzzy subset of kind `premise` is also of kind `conclusion`.
    Implication { premise: IdealKind, conclusion: IdealKind },
    /// `μ` left, `ν` right ⟹ `μ∘ν` two-sided.
    ProductIdeal,
    Identity(Identity),
    /// Identities between starred characteristic functions of non-empty
    /// subsets `L`, `R`.
    CharIdentity(CharClaim),
    /// A non-empty `A` is a crisp `kind` iff `χ*_A` is a fuzzy `kind`.
    CharIdeal(IdealKind),
    /// A fuzzy LA-subsemigroup `μ` has `μ*` a classical fuzzy
    /// LA-subsemigroup.
    /// `μ*(ab)` compared with `μ*(a) ∧ μ*(b)` for every LA-subsemigroup `μ`.
    StarProjection(Cmp),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Statement {
    pub id: &'static str,
    /// Normalized roman numeral, when the family has several variants.
    pub variant: Option<&'static str>,
    /// The label as originally printed, when it differs.
    pub label: Option<&'static str>,
    pub body: Body,
    /// Hypotheses the proofs rely on; enforced by default.
    pub hypotheses: Hypotheses,
    /// Hypotheses as stated, when weaker than the above.
    pub stated: Hypotheses,
    pub note: Option<&'static str>,
}

impl Statement {
    pub fn name(&self) -> String {
        match self.variant {
            Some(v) => format!("{}({v})", self.id),
            None => self.id.to_string(),
        }
    }

    pub fn is_biconditional(&self) -> bool {
        matches!(
            self.body,
            Body::Crisp { .. } | Body::CharIdeal(_) | Body::Identity(Identity { property: Some(_), .. })
        )
    }

    /// The same statement with its inequality reversed. Used to check that
    /// the harness can find counterexamples at all.
    pub fn flipped(&self) -> Option<Statement> {
        let body = match &self.body {
            Body::Identity(id) if id.cmp != Cmp::Eq => Body::Identity(Identity {
                cmp: id.cmp.flipped(),
                ..id.clone()
            }),
            Body::StarProjection(cmp) if *cmp != Cmp::Eq => Body::StarProjection(cmp.flipped()),
            _ => return None,
        };
        let mut out = self.clone();
        out.body = body;
        out.note = Some("mutated: comparison reversed");
        Some(out)
    }

    pub fn describe(&self) -> String {
        match &self.body {
            Body::Crisp { property, claim } => {
                let rhs = match claim {
                    CrispClaim::MeetIsProduct => "R ∩ L = LR for every left ideal L and right ideal R",
                    CrispClaim::MeetInProduct => "L ∩ R ⊆ LR for every left ideal L and right ideal R",
                    CrispClaim::QuasiIdempotent => "QQ = Q for every quasi-ideal Q",
                    CrispClaim::MeetIsReversedProduct => "A ∩ B = BA for every left ideal A and right ideal B",
                    CrispClaim::QuasiSandwich => "(AS)A = A for every quasi-ideal A",
                };
                format!("S {} ⟺ {rhs}", property.name())
            }
            Body::Implication { premise, conclusion } => format!("every {premise} is a {conclusion}"),
            Body::ProductIdeal => "μ left-ideal, ν right-ideal ⟹ μ ∘ ν two-sided-ideal".into(),
            Body::Identity(id) => {
                let roles: Vec<String> = id
                    .roles
                    .iter()
                    .enumerate()
                    .map(|(i, r)| format!("{} {}", super::expr::VAR_NAMES[i], r.describe()))
                    .collect();
                let eq = format!("{} {} {}", id.left, id.cmp.symbol(), id.right);
                match id.property {
                    Some(p) => format!("S {} ⟺ {eq} for {}", p.name(), roles.join(", ")),
                    None => format!("{eq} for {}", roles.join(", ")),
                }
            }
            Body::CharIdentity(c) => match c {
                CharClaim::Meet => "χ_L ∧* χ_R = χ*_{L∩R}".into(),
                CharClaim::Join => "χ_L ∨* χ_R = χ*_{L∪R}".into(),
                CharClaim::Product => "χ_L ∗ χ_R = χ*_{LR}".into(),
            },
            Body::CharIdeal(k) => format!("A crisp {k} ⟺ χ*_A fuzzy {k}"),
            Body::StarProjection(cmp) => format!("μ la-subsemigroup ⟹ μ*(ab) {} μ*(a) ∧ μ*(b)", cmp.symbol()),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name(), self.describe())
    }
}

/// Family ids in catalog order.
pub const FAMILIES: [&str; 21] = [
    "CRISP-TH1",
    "CRISP-TH12",
    "CRISP-TH2",
    "CRISP-TH3",
    "FT-GENBI",
    "FT-QUASI",
    "FT-PROD",
    "L-STAR",
    "L-CHAR",
    "L-CHARIDEAL-L",
    "L-CHARIDEAL-R",
    "L-CHARIDEAL-Q",
    "P-STAR",
    "T-REG-MEET",
    "T-REG-SANDWICH",
    "T-REG-TRIPLE",
    "T-REG-MIDDLE",
    "T-REG-QLE",
    "T-INTRA",
    "T-RI-IDEM",
    "T-RI-BOTH",
];

const ROMAN: [&str; 14] = [
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv",
];

use IdealKind::{
    BiIdeal as Bi, GeneralizedBiIdeal as GenBi, InteriorIdeal as Interior, LeftIdeal as Left,
    QuasiIdeal as Quasi, RightIdeal as Right, TwoSidedIdeal as TwoSided,
};

fn base(id: &'static str, body: Body, hypotheses: Hypotheses) -> Statement {
    Statement {
        id,
        variant: None,
        label: None,
        body,
        hypotheses,
        stated: hypotheses,
        note: None,
    }
}

fn variant(mut s: Statement, idx: usize, label: Option<&'static str>) -> Statement {
    s.variant = Some(ROMAN[idx]);
    s.label = label;
    s
}

fn identity(property: Option<Property>, roles: Vec<Role>, left: Expr, right: Expr, cmp: Cmp) -> Body {
    Body::Identity(Identity {
        property,
        roles,
        left,
        right,
        cmp,
    })
}

const WR: Hypotheses = Hypotheses::WEAKLY_REGULAR_WITH_IDENTITY;

/// Every statement, grouped by family in [`FAMILIES`] order.
pub fn catalog() -> Vec<Statement> {
    let mut out = Vec::new();
    let (mu, nu, rho) = (var(0), var(1), var(2));

    out.push(base(
        "CRISP-TH1",
        Body::Crisp {
            property: Property::Regular,
            claim: CrispClaim::MeetIsProduct,
        },
        WR,
    ));
    out.push(base(
        "CRISP-TH12",
        Body::Crisp {
            property: Property::Regular,
            claim: CrispClaim::MeetInProduct,
        },
        WR,
    ));
    out.push(base(
        "CRISP-TH2",
        Body::Crisp {
            property: Property::RegularAndIntraRegular,
            claim: CrispClaim::QuasiIdempotent,
        },
        WR,
    ));
    for (i, claim) in [CrispClaim::MeetIsReversedProduct, CrispClaim::QuasiSandwich]
        .into_iter()
        .enumerate()
    {
        let s = base(
            "CRISP-TH3",
            Body::Crisp {
                property: Property::Regular,
                claim,
            },
            WR,
        );
        // both items were printed as "(ii)"
        out.push(variant(s, i + 1, Some("(ii)")));
    }

    out.push(base(
        "FT-GENBI",
        Body::Implication {
            premise: GenBi,
            conclusion: Bi,
        },
        WR,
    ));
    out.push(base(
        "FT-QUASI",
        Body::Implication {
            premise: Quasi,
            conclusion: Bi,
        },
        WR,
    ));
    out.push(base("FT-PROD", Body::ProductIdeal, WR));

    let any2 = || vec![Role::Any, Role::Any];
    let star_lemma = [
        (meet_star(mu.clone(), nu.clone()), meet(star(mu.clone()), star(nu.clone()))),
        (join_star(mu.clone(), nu.clone()), join(star(mu.clone()), star(nu.clone()))),
        (prod(mu.clone(), nu.clone()), compose(star(mu.clone()), star(nu.clone()))),
    ];
    for (i, (l, r)) in star_lemma.into_iter().enumerate() {
        let s = base("L-STAR", identity(None, any2(), l, r, Cmp::Eq), Hypotheses::NONE);
        out.push(variant(s, i, None));
    }
    for (i, c) in [CharClaim::Meet, CharClaim::Join, CharClaim::Product].into_iter().enumerate() {
        out.push(variant(base("L-CHAR", Body::CharIdentity(c), Hypotheses::NONE), i, None));
    }
    out.push(base("L-CHARIDEAL-L", Body::CharIdeal(Left), Hypotheses::NONE));
    out.push(base("L-CHARIDEAL-R", Body::CharIdeal(Right), Hypotheses::NONE));
    out.push(base("L-CHARIDEAL-Q", Body::CharIdeal(Quasi), Hypotheses::NONE));
    out.push(base("P-STAR", Body::StarProjection(Cmp::Ge), Hypotheses::NONE));

    let reg = Some(Property::Regular);
    let both = Some(Property::RegularAndIntraRegular);
    let k = Role::Kind;

    let mut meet_thm = base(
        "T-REG-MEET",
        identity(
            reg,
            vec![k(Right), k(Left)],
            meet_star(mu.clone(), nu.clone()),
            prod(mu.clone(), nu.clone()),
            Cmp::Eq,
        ),
        WR,
    );
    meet_thm.stated = Hypotheses::NONE;
    meet_thm.note = Some("stated for every LA-semigroup; the converse argument needs weak regularity and a left identity");
    out.push(meet_thm);

    for (i, r) in [GenBi, Bi, Quasi].into_iter().enumerate() {
        let s = base(
            "T-REG-SANDWICH",
            identity(
                reg,
                vec![k(Right), k(Left), k(r)],
                meet_star(meet_star(mu.clone(), nu.clone()), rho.clone()),
                prod(prod(mu.clone(), nu.clone()), rho.clone()),
                Cmp::Le,
            ),
            WR,
        );
        out.push(variant(s, i + 1, None));
    }

    for (i, m) in [GenBi, Bi, Quasi].into_iter().enumerate() {
        let s = base(
            "T-REG-TRIPLE",
            identity(
                reg,
                vec![k(m)],
                star(mu.clone()),
                prod(prod(mu.clone(), one()), mu.clone()),
                Cmp::Eq,
            ),
            WR,
        );
        out.push(variant(s, i + 1, None));
    }

    let middle = [
        (Quasi, TwoSided),
        (Quasi, Interior),
        (Bi, TwoSided),
        (Bi, Interior),
        (GenBi, TwoSided),
        (GenBi, Interior),
    ];
    for (i, (m, n)) in middle.into_iter().enumerate() {
        let s = base(
            "T-REG-MIDDLE",
            identity(
                reg,
                vec![k(m), k(n)],
                meet_star(mu.clone(), nu.clone()),
                prod(prod(mu.clone(), nu.clone()), mu.clone()),
                Cmp::Eq,
            ),
            WR,
        );
        out.push(variant(s, i + 1, None));
    }

    for (i, m) in [Quasi, Bi, GenBi].into_iter().enumerate() {
        let s = base(
            "T-REG-QLE",
            identity(
                reg,
                vec![k(m), k(Left)],
                meet_star(mu.clone(), nu.clone()),
                prod(mu.clone(), nu.clone()),
                Cmp::Le,
            ),
            WR,
        );
        out.push(variant(s, i + 1, None));
    }

    out.push(base(
        "T-INTRA",
        identity(
            Some(Property::IntraRegular),
            vec![k(Left), k(Right)],
            meet_star(mu.clone(), nu.clone()),
            prod(mu.clone(), nu.clone()),
            Cmp::Le,
        ),
        WR,
    ));

    for (i, m) in [Quasi, Bi].into_iter().enumerate() {
        let s = base(
            "T-RI-IDEM",
            identity(both, vec![k(m)], prod(mu.clone(), mu.clone()), star(mu.clone()), Cmp::Eq),
            WR,
        );
        out.push(variant(s, i + 1, None));
    }
    let idem_pairs = [(Quasi, Quasi, None), (Quasi, Bi, Some("(iv)")), (Bi, Bi, None)];
    for (i, (m, n, label)) in idem_pairs.into_iter().enumerate() {
        let s = base(
            "T-RI-IDEM",
            identity(
                both,
                vec![k(m), k(n)],
                prod(mu.clone(), nu.clone()),
                meet_star(mu.clone(), nu.clone()),
                Cmp::Ge,
            ),
            WR,
        );
        out.push(variant(s, i + 3, label));
    }

    let both_pairs = [
        (Right, Left),
        (Right, Quasi),
        (Right, Bi),
        (Right, GenBi),
        (Left, Quasi),
        (Left, Bi),
        (Left, GenBi),
        (Quasi, Quasi),
        (Quasi, Left),
        (Quasi, GenBi),
        (Bi, Bi),
        (Bi, GenBi),
        (GenBi, GenBi),
    ];
    for (i, (m, n)) in both_pairs.into_iter().enumerate() {
        let s = base(
            "T-RI-BOTH",
            identity(
                both,
                vec![k(m), k(n)],
                meet(prod(mu.clone(), nu.clone()), prod(nu.clone(), mu.clone())),
                meet_star(mu.clone(), nu.clone()),
                Cmp::Ge,
            ),
            WR,
        );
        let label = if i + 1 == 13 { Some("(ixv)") } else { None };
        out.push(variant(s, i + 1, label));
    }

    out
}

/// Statements for a family id such as `T-REG-MIDDLE`, or a single variant
/// such as `T-REG-MIDDLE(iii)`. Matching ignores case.
pub fn lookup(id: &str) -> Option<Vec<Statement>> {
    let id = id.trim().to_ascii_uppercase();
    let (family, var) = match id.split_once('(') {
        Some((f, rest)) => (f.to_string(), Some(rest.trim_end_matches(')').to_ascii_lowercase())),
        None => (id, None),
    };
    let found: Vec<Statement> = catalog()
        .into_iter()
        .filter(|s| s.id == family && var.as_deref().is_none_or(|v| s.variant == Some(v)))
        .collect();
    (!found.is_empty()).then_some(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_is_present_once_in_order() {
        let cat = catalog();
        let mut fams: Vec<&str> = cat.iter().map(|s| s.id).collect();
        fams.dedup();
        assert_eq!(fams, FAMILIES.to_vec());
        let names: std::collections::BTreeSet<String> = cat.iter().map(|s| s.name()).collect();
        assert_eq!(names.len(), cat.len());
    }

    #[test]
    fn variant_counts() {
        let count = |id| lookup(id).unwrap().len();
        assert_eq!(count("CRISP-TH3"), 2);
        assert_eq!(count("L-STAR"), 3);
        assert_eq!(count("T-REG-SANDWICH"), 3);
        assert_eq!(count("T-REG-MIDDLE"), 6);
        assert_eq!(count("T-RI-IDEM"), 5);
        assert_eq!(count("T-RI-BOTH"), 13);
    }

    #[test]
    fn lookup_single_variant() {
        let s = lookup("t-ri-both(xiv)").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].label, Some("(ixv)"));
        assert_eq!(s[0].name(), "T-RI-BOTH(xiv)");
        assert!(lookup("T-RI-BOTH(xv)").is_none());
        assert!(lookup("NOPE").is_none());
    }

    #[test]
    fn flip_reverses_inequalities_only() {
        let qle = &lookup("T-REG-QLE(ii)").unwrap()[0];
        let f = qle.flipped().unwrap();
        match f.body {
            Body::Identity(id) => assert_eq!(id.cmp, Cmp::Ge),
            _ => unreachable!(),
        }
        assert!(lookup("T-REG-MEET").unwrap()[0].flipped().is_none());
    }

    #[test]
    fn descriptions() {
        let s = &lookup("T-REG-SANDWICH(ii)").unwrap()[0];
        assert_eq!(
            s.describe(),
            "S regular ⟺ (μ ∧* ν) ∧* ρ ≤ (μ ∗ ν) ∗ ρ for μ right-ideal, ν left-ideal, ρ generalized-bi-ideal"
        );
        assert!(lookup("L-STAR(iii)").unwrap()[0].describe().starts_with("μ ∗ ν = μ* ∘ ν*"));
    }
}
