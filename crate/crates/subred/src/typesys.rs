//! Type expressions, type substitutions, and the constructor order.
//!
//! Types are first-order terms over a finite set of constructors (each with a
//! fixed arity) and a denumerable set of parameters. Subtyping is generated by
//! a declared order on constructors: every declared pair `K < K'` carries an
//! *injection* mapping each argument position of the larger constructor `K'`
//! to an argument position of the smaller one, so that argument positions may
//! be permuted or forgotten as we move up the hierarchy (`List(u) <= Anylist`
//! forgets the element type). Two rules extend the constructor order to types:
//!
//! ```text
//! (Par)     u <= u
//! (Constr)  K(t_1..t_m) <= K'(s_1..s_n)   if K <= K', t_{inj(i)} <= s_i for all i
//! ```
//!
//! The order is designed so that every type has a maximum supertype (`max_type`),
//! which the inequality solver relies on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Type expressions
// ---------------------------------------------------------------------------

/// A type expression: a parameter or a constructor applied to arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeExpr {
    /// A type parameter such as `u`.
    Param(String),
    /// A constructor application such as `List(Int)`; constants are
    /// zero-argument applications.
    Comp(String, Vec<TypeExpr>),
}

impl TypeExpr {
    pub fn param(name: impl Into<String>) -> Self {
        TypeExpr::Param(name.into())
    }

    pub fn comp(ctor: impl Into<String>, args: Vec<TypeExpr>) -> Self {
        TypeExpr::Comp(ctor.into(), args)
    }

    /// Nullary constructor application.
    pub fn atom(ctor: impl Into<String>) -> Self {
        TypeExpr::Comp(ctor.into(), Vec::new())
    }

    /// Number of constructor and parameter occurrences; always >= 1.
    pub fn size(&self) -> usize {
        match self {
            TypeExpr::Param(_) => 1,
            TypeExpr::Comp(_, args) => 1 + args.iter().map(TypeExpr::size).sum::<usize>(),
        }
    }

    /// All parameters occurring in the type.
    pub fn params(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        self.collect_params(&mut acc);
        acc
    }

    fn collect_params(&self, acc: &mut BTreeSet<String>) {
        match self {
            TypeExpr::Param(u) => {
                acc.insert(u.clone());
            }
            TypeExpr::Comp(_, args) => {
                for a in args {
                    a.collect_params(acc);
                }
            }
        }
    }

    pub fn contains_param(&self, name: &str) -> bool {
        match self {
            TypeExpr::Param(u) => u == name,
            TypeExpr::Comp(_, args) => args.iter().any(|a| a.contains_param(name)),
        }
    }

    /// `tau[u/sigma]`: replace every occurrence of the parameter `u`.
    pub fn replace_param(&self, name: &str, replacement: &TypeExpr) -> TypeExpr {
        match self {
            TypeExpr::Param(u) if u == name => replacement.clone(),
            TypeExpr::Param(_) => self.clone(),
            TypeExpr::Comp(k, args) => TypeExpr::Comp(
                k.clone(),
                args.iter().map(|a| a.replace_param(name, replacement)).collect(),
            ),
        }
    }

    /// A flat type is a constructor applied to pairwise distinct parameters.
    pub fn is_flat(&self) -> bool {
        match self {
            TypeExpr::Param(_) => false,
            TypeExpr::Comp(_, args) => {
                let mut seen = BTreeSet::new();
                args.iter().all(|a| match a {
                    TypeExpr::Param(u) => seen.insert(u.clone()),
                    TypeExpr::Comp(..) => false,
                })
            }
        }
    }

    /// Check constructor arities against the order.
    pub fn well_formed(&self, order: &ConstructorOrder) -> Result<(), SignatureError> {
        match self {
            TypeExpr::Param(_) => Ok(()),
            TypeExpr::Comp(k, args) => {
                let arity = order
                    .arity(k)
                    .ok_or_else(|| SignatureError::UnknownConstructor { name: k.clone() })?;
                if arity != args.len() {
                    return Err(SignatureError::ConstructorArity {
                        name: k.clone(),
                        declared: arity,
                        used: args.len(),
                    });
                }
                for a in args {
                    a.well_formed(order)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Param(u) => write!(f, "{u}"),
            TypeExpr::Comp(k, args) => {
                write!(f, "{k}")?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Type substitutions
// ---------------------------------------------------------------------------

/// An idempotent, finite mapping from parameters to types.
///
/// Idempotence is enforced at construction: no parameter in the domain may
/// occur in any type of the range, so applying a substitution twice equals
/// applying it once.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TypeSubst {
    map: BTreeMap<String, TypeExpr>,
}

/// Rejected binding that would make a substitution non-idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonIdempotentSubst {
    pub param: String,
    pub ty: TypeExpr,
}

impl fmt::Display for NonIdempotentSubst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "non-idempotent type substitution: domain parameter {} occurs in range type {}",
            self.param, self.ty
        )
    }
}

impl std::error::Error for NonIdempotentSubst {}

impl TypeSubst {
    pub fn identity() -> Self {
        TypeSubst::default()
    }

    pub fn new(map: BTreeMap<String, TypeExpr>) -> Result<Self, NonIdempotentSubst> {
        for u in map.keys() {
            for ty in map.values() {
                if ty.contains_param(u) {
                    return Err(NonIdempotentSubst { param: u.clone(), ty: ty.clone() });
                }
            }
        }
        Ok(TypeSubst { map })
    }

    pub fn singleton(param: impl Into<String>, ty: TypeExpr) -> Result<Self, NonIdempotentSubst> {
        let mut map = BTreeMap::new();
        map.insert(param.into(), ty);
        TypeSubst::new(map)
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }

    pub fn get(&self, param: &str) -> Option<&TypeExpr> {
        self.map.get(param)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &TypeExpr)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Parameters occurring in the range.
    pub fn range_params(&self) -> BTreeSet<String> {
        let mut acc = BTreeSet::new();
        for ty in self.map.values() {
            ty.collect_params(&mut acc);
        }
        acc
    }

    pub fn apply(&self, ty: &TypeExpr) -> TypeExpr {
        match ty {
            TypeExpr::Param(u) => self.map.get(u).cloned().unwrap_or_else(|| ty.clone()),
            TypeExpr::Comp(k, args) => {
                TypeExpr::Comp(k.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    /// Restrict the domain to the given parameters.
    pub fn restrict(&self, params: &BTreeSet<String>) -> TypeSubst {
        TypeSubst {
            map: self
                .map
                .iter()
                .filter(|(u, _)| params.contains(*u))
                .map(|(u, t)| (u.clone(), t.clone()))
                .collect(),
        }
    }

    /// Composition `self` then `next`: the result maps `u` to `next(self(u))`,
    /// and agrees with `next` outside `dom(self)`.
    pub fn then(&self, next: &TypeSubst) -> Result<TypeSubst, NonIdempotentSubst> {
        let mut map = BTreeMap::new();
        for (u, t) in self.map.iter() {
            map.insert(u.clone(), next.apply(t));
        }
        for (u, t) in next.map.iter() {
            map.entry(u.clone()).or_insert_with(|| t.clone());
        }
        map.retain(|u, t| t != &TypeExpr::Param(u.clone()));
        TypeSubst::new(map)
    }
}

impl fmt::Display for TypeSubst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (u, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}/{t}")?;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// The constructor order
// ---------------------------------------------------------------------------

/// A constructor declaration: name and arity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constructor {
    pub name: String,
    pub arity: usize,
}

/// A declared direct edge `lo < hi` of the constructor order.
///
/// `injection[j]` (0-based) is the argument position of `lo` that argument
/// position `j` of `hi` corresponds to. An empty injection forgets all of
/// `lo`'s arguments, as in `List < Anylist`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtypeEdge {
    pub lo: String,
    pub hi: String,
    pub injection: Vec<usize>,
}

/// Errors detected while validating a constructor order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureError {
    DuplicateConstructor { name: String },
    UnknownConstructor { name: String },
    ConstructorArity { name: String, declared: usize, used: usize },
    /// `lo < hi` requires arity(lo) >= arity(hi).
    ArityOrderViolation { lo: String, hi: String, lo_arity: usize, hi_arity: usize },
    /// Injection is not a map {1..arity(hi)} -> {1..arity(lo)}, or not injective.
    BadInjection { lo: String, hi: String, detail: String },
    /// Two paths between the same constructors compose to different injections.
    IncoherentInjections { lo: String, hi: String },
    /// Distinct constructors below and above each other.
    ConstructorCycle { a: String, b: String },
    /// The up-set of `ctor` has no maximum.
    NoMaximumConstructor { ctor: String },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::DuplicateConstructor { name } => {
                write!(f, "duplicate constructor declaration: {name}")
            }
            SignatureError::UnknownConstructor { name } => {
                write!(f, "unknown type constructor: {name}")
            }
            SignatureError::ConstructorArity { name, declared, used } => {
                write!(f, "constructor {name} declared with arity {declared} but used with {used} arguments")
            }
            SignatureError::ArityOrderViolation { lo, hi, lo_arity, hi_arity } => {
                write!(
                    f,
                    "subtype edge {lo} < {hi} violates the arity condition: arity({lo}) = {lo_arity} must be >= arity({hi}) = {hi_arity}"
                )
            }
            SignatureError::BadInjection { lo, hi, detail } => {
                write!(f, "bad injection on edge {lo} < {hi}: {detail}")
            }
            SignatureError::IncoherentInjections { lo, hi } => {
                write!(
                    f,
                    "incoherent injections: two paths from {lo} to {hi} compose to different injections"
                )
            }
            SignatureError::ConstructorCycle { a, b } => {
                write!(f, "constructor order contains a cycle between {a} and {b}")
            }
            SignatureError::NoMaximumConstructor { ctor } => {
                write!(f, "the constructors above {ctor} have no unique maximum")
            }
        }
    }
}

impl std::error::Error for SignatureError {}

/// The constructor order: arities, the declared edges, the reflexive-transitive
/// closure with composed injections, and the per-constructor maximum.
///
/// Construction verifies everything the subtype order relies on: the arity
/// condition on every edge, injectivity of every injection, coherence of
/// injection composition across alternative paths, absence of cycles, and the
/// existence of a maximum above every constructor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructorOrder {
    arities: BTreeMap<String, usize>,
    edges: Vec<SubtypeEdge>,
    /// (lo, hi) -> composed injection, including reflexive identities.
    closure: BTreeMap<(String, String), Vec<usize>>,
    maxima: BTreeMap<String, String>,
}

impl ConstructorOrder {
    /// An order with no constructors; subtyping then relates only identical
    /// parameters.
    pub fn empty() -> Self {
        ConstructorOrder {
            arities: BTreeMap::new(),
            edges: Vec::new(),
            closure: BTreeMap::new(),
            maxima: BTreeMap::new(),
        }
    }

    pub fn build(
        ctors: Vec<Constructor>,
        edges: Vec<SubtypeEdge>,
    ) -> Result<Self, SignatureError> {
        let mut arities = BTreeMap::new();
        for c in &ctors {
            if arities.insert(c.name.clone(), c.arity).is_some() {
                return Err(SignatureError::DuplicateConstructor { name: c.name.clone() });
            }
        }

        let mut closure: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
        for (name, arity) in &arities {
            closure.insert((name.clone(), name.clone()), (0..*arity).collect());
        }

        for e in &edges {
            let lo_arity = *arities
                .get(&e.lo)
                .ok_or_else(|| SignatureError::UnknownConstructor { name: e.lo.clone() })?;
            let hi_arity = *arities
                .get(&e.hi)
                .ok_or_else(|| SignatureError::UnknownConstructor { name: e.hi.clone() })?;
            if lo_arity < hi_arity {
                return Err(SignatureError::ArityOrderViolation {
                    lo: e.lo.clone(),
                    hi: e.hi.clone(),
                    lo_arity,
                    hi_arity,
                });
            }
            if e.injection.len() != hi_arity {
                return Err(SignatureError::BadInjection {
                    lo: e.lo.clone(),
                    hi: e.hi.clone(),
                    detail: format!(
                        "expected {} entries (one per argument of {}), got {}",
                        hi_arity,
                        e.hi,
                        e.injection.len()
                    ),
                });
            }
            let mut seen = BTreeSet::new();
            for &i in &e.injection {
                if i >= lo_arity {
                    return Err(SignatureError::BadInjection {
                        lo: e.lo.clone(),
                        hi: e.hi.clone(),
                        detail: format!(
                            "position {} out of range for {} (arity {})",
                            i + 1,
                            e.lo,
                            lo_arity
                        ),
                    });
                }
                if !seen.insert(i) {
                    return Err(SignatureError::BadInjection {
                        lo: e.lo.clone(),
                        hi: e.hi.clone(),
                        detail: format!("position {} used twice; the map must be injective", i + 1),
                    });
                }
            }
            Self::insert_pair(&mut closure, &e.lo, &e.hi, e.injection.clone())?;
        }

        // Transitive closure with injection composition, checking coherence.
        loop {
            let mut additions: Vec<((String, String), Vec<usize>)> = Vec::new();
            for ((a, b), inj_ab) in closure.iter() {
                for ((b2, c), inj_bc) in closure.iter() {
                    if b != b2 {
                        continue;
                    }
                    // inj_{a,c}(i) = inj_{a,b}(inj_{b,c}(i))
                    let composed: Vec<usize> = inj_bc.iter().map(|&i| inj_ab[i]).collect();
                    match closure.get(&(a.clone(), c.clone())) {
                        Some(existing) => {
                            if existing != &composed {
                                return Err(SignatureError::IncoherentInjections {
                                    lo: a.clone(),
                                    hi: c.clone(),
                                });
                            }
                        }
                        None => additions.push(((a.clone(), c.clone()), composed)),
                    }
                }
            }
            if additions.is_empty() {
                break;
            }
            for ((a, c), inj) in additions {
                Self::insert_pair(&mut closure, &a, &c, inj)?;
            }
        }

        for ((a, b), _) in closure.iter() {
            if a != b && closure.contains_key(&(b.clone(), a.clone())) {
                return Err(SignatureError::ConstructorCycle { a: a.clone(), b: b.clone() });
            }
        }

        let mut maxima = BTreeMap::new();
        for name in arities.keys() {
            let ups: Vec<&String> = closure
                .keys()
                .filter(|(a, _)| a == name)
                .map(|(_, b)| b)
                .collect();
            let max = ups.iter().find(|m| {
                ups.iter().all(|k| closure.contains_key(&((*k).clone(), (*m).clone())))
            });
            match max {
                Some(m) => {
                    maxima.insert(name.clone(), (*m).clone());
                }
                None => {
                    return Err(SignatureError::NoMaximumConstructor { ctor: name.clone() })
                }
            }
        }

        Ok(ConstructorOrder { arities, edges, closure, maxima })
    }

    fn insert_pair(
        closure: &mut BTreeMap<(String, String), Vec<usize>>,
        lo: &str,
        hi: &str,
        inj: Vec<usize>,
    ) -> Result<(), SignatureError> {
        match closure.get(&(lo.to_string(), hi.to_string())) {
            Some(existing) if existing != &inj => Err(SignatureError::IncoherentInjections {
                lo: lo.to_string(),
                hi: hi.to_string(),
            }),
            Some(_) => Ok(()),
            None => {
                closure.insert((lo.to_string(), hi.to_string()), inj);
                Ok(())
            }
        }
    }

    pub fn arity(&self, ctor: &str) -> Option<usize> {
        self.arities.get(ctor).copied()
    }

    pub fn constructors(&self) -> impl Iterator<Item = (&String, usize)> {
        self.arities.iter().map(|(k, a)| (k, *a))
    }

    pub fn declared_edges(&self) -> &[SubtypeEdge] {
        &self.edges
    }

    /// `lo <= hi` in the reflexive-transitive closure.
    pub fn ctor_le(&self, lo: &str, hi: &str) -> bool {
        self.closure.contains_key(&(lo.to_string(), hi.to_string()))
    }

    /// Composed injection for `lo <= hi`, 0-based.
    pub fn injection(&self, lo: &str, hi: &str) -> Option<&Vec<usize>> {
        self.closure.get(&(lo.to_string(), hi.to_string()))
    }

    /// The maximum constructor above `ctor`.
    pub fn max_ctor(&self, ctor: &str) -> Option<&String> {
        self.maxima.get(ctor)
    }

    /// All constructors `hi` with `ctor <= hi`.
    pub fn upper_set(&self, ctor: &str) -> Vec<String> {
        self.closure
            .keys()
            .filter(|(a, _)| a == ctor)
            .map(|(_, b)| b.clone())
            .collect()
    }

    /// The subtyping order on types: rules (Par) and (Constr).
    pub fn subtype_le(&self, lhs: &TypeExpr, rhs: &TypeExpr) -> bool {
        match (lhs, rhs) {
            (TypeExpr::Param(u), TypeExpr::Param(v)) => u == v,
            (TypeExpr::Comp(k, args), TypeExpr::Comp(k2, args2)) => {
                match self.injection(k, k2) {
                    None => false,
                    Some(inj) => inj
                        .iter()
                        .zip(args2.iter())
                        .all(|(&i, arg2)| self.subtype_le(&args[i], arg2)),
                }
            }
            _ => false,
        }
    }

    /// The maximum of `{sigma | tau <= sigma}`.
    ///
    /// The constructor is lifted to its maximal constructor, arguments are
    /// permuted or dropped through the composed injection, and retained
    /// arguments are maximised recursively, so that
    /// `max_type(tau[u/sigma]) = max_type(tau)[u/max_type(sigma)]`.
    pub fn max_type(&self, ty: &TypeExpr) -> TypeExpr {
        match ty {
            TypeExpr::Param(_) => ty.clone(),
            TypeExpr::Comp(k, args) => {
                let m = self
                    .max_ctor(k)
                    .unwrap_or_else(|| panic!("constructor {k} not in the order"));
                let inj = self.injection(k, m).expect("closure contains the maximum");
                TypeExpr::Comp(
                    m.clone(),
                    inj.iter().map(|&i| self.max_type(&args[i])).collect(),
                )
            }
        }
    }

    /// Least upper bound of two types, when one exists and is unambiguous.
    ///
    /// Returns `Ok(None)` when the types have no common upper bound, and
    /// `Err(candidates)` when several minimal common upper constructors make
    /// the choice ambiguous.
    pub fn least_upper_bound(
        &self,
        a: &TypeExpr,
        b: &TypeExpr,
    ) -> Result<Option<TypeExpr>, Vec<String>> {
        match (a, b) {
            (TypeExpr::Param(u), TypeExpr::Param(v)) if u == v => Ok(Some(a.clone())),
            (TypeExpr::Comp(ka, args_a), TypeExpr::Comp(kb, args_b)) => {
                let common: Vec<String> = self
                    .upper_set(ka)
                    .into_iter()
                    .filter(|k| self.ctor_le(kb, k))
                    .collect();
                if common.is_empty() {
                    return Ok(None);
                }
                let minimal: Vec<&String> = common
                    .iter()
                    .filter(|m| {
                        common.iter().all(|k| !self.ctor_le(k, m) || k == *m)
                    })
                    .collect();
                match minimal.as_slice() {
                    [m] => {
                        let inj_a = self.injection(ka, m).expect("common upper bound");
                        let inj_b = self.injection(kb, m).expect("common upper bound");
                        let mut args = Vec::new();
                        for (&ia, &ib) in inj_a.iter().zip(inj_b.iter()) {
                            match self.least_upper_bound(&args_a[ia], &args_b[ib])? {
                                Some(arg) => args.push(arg),
                                None => return Ok(None),
                            }
                        }
                        Ok(Some(TypeExpr::Comp((*m).clone(), args)))
                    }
                    _ => Err(minimal.into_iter().cloned().collect()),
                }
            }
            _ => Ok(None),
        }
    }

    /// Greatest lower bound of two types, when one exists and is unambiguous.
    pub fn greatest_lower_bound(
        &self,
        a: &TypeExpr,
        b: &TypeExpr,
    ) -> Result<Option<TypeExpr>, Vec<String>> {
        match (a, b) {
            (TypeExpr::Param(u), TypeExpr::Param(v)) if u == v => Ok(Some(a.clone())),
            (TypeExpr::Comp(ka, args_a), TypeExpr::Comp(kb, args_b)) => {
                let common: Vec<String> = self
                    .arities
                    .keys()
                    .filter(|k| self.ctor_le(k, ka) && self.ctor_le(k, kb))
                    .cloned()
                    .collect();
                if common.is_empty() {
                    return Ok(None);
                }
                let maximal: Vec<&String> = common
                    .iter()
                    .filter(|m| {
                        common.iter().all(|k| !self.ctor_le(m, k) || k == *m)
                    })
                    .collect();
                match maximal.as_slice() {
                    [m] => {
                        let inj_a = self.injection(m, ka).expect("common lower bound");
                        let inj_b = self.injection(m, kb).expect("common lower bound");
                        let arity = self.arity(m).expect("declared");
                        let mut args = Vec::new();
                        for pos in 0..arity {
                            // Argument `pos` of the lower constructor is
                            // constrained by every argument of ka/kb it maps to.
                            let mut bounds: Vec<&TypeExpr> = Vec::new();
                            for (j, &i) in inj_a.iter().enumerate() {
                                if i == pos {
                                    bounds.push(&args_a[j]);
                                }
                            }
                            for (j, &i) in inj_b.iter().enumerate() {
                                if i == pos {
                                    bounds.push(&args_b[j]);
                                }
                            }
                            match bounds.as_slice() {
                                [] => return Ok(None), // unconstrained argument: no canonical choice
                                [first, rest @ ..] => {
                                    let mut acc = (*first).clone();
                                    for b in rest {
                                        match self.greatest_lower_bound(&acc, b)? {
                                            Some(glb) => acc = glb,
                                            None => return Ok(None),
                                        }
                                    }
                                    args.push(acc);
                                }
                            }
                        }
                        Ok(Some(TypeExpr::Comp((*m).clone(), args)))
                    }
                    _ => Err(maximal.into_iter().cloned().collect()),
                }
            }
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list_order() -> ConstructorOrder {
        ConstructorOrder::build(
            vec![
                Constructor { name: "List".into(), arity: 1 },
                Constructor { name: "Anylist".into(), arity: 0 },
                Constructor { name: "Int".into(), arity: 0 },
                Constructor { name: "Real".into(), arity: 0 },
            ],
            vec![
                SubtypeEdge { lo: "List".into(), hi: "Anylist".into(), injection: vec![] },
                SubtypeEdge { lo: "Int".into(), hi: "Real".into(), injection: vec![] },
            ],
        )
        .unwrap()
    }

    fn list(t: TypeExpr) -> TypeExpr {
        TypeExpr::comp("List", vec![t])
    }

    #[test]
    fn size_counts_occurrences() {
        let order = list_order();
        let _ = order;
        assert_eq!(TypeExpr::atom("Anylist").size(), 1);
        assert_eq!(list(TypeExpr::param("u")).size(), 2);
        assert_eq!(list(list(TypeExpr::atom("Int"))).size(), 3);
    }

    #[test]
    fn subst_application() {
        let s = TypeSubst::singleton("u", TypeExpr::atom("Int")).unwrap();
        assert_eq!(s.apply(&list(TypeExpr::param("u"))), list(TypeExpr::atom("Int")));
        let t = TypeSubst::singleton("u", TypeExpr::atom("Real")).unwrap();
        assert_eq!(t.apply(&TypeExpr::atom("Int")), TypeExpr::atom("Int"));
    }

    #[test]
    fn subst_rejects_non_idempotent() {
        let err = TypeSubst::singleton("u", list(TypeExpr::param("u")));
        assert!(err.is_err());
    }

    #[test]
    fn subst_apply_is_fixpoint() {
        let s = TypeSubst::singleton("u", list(TypeExpr::param("v"))).unwrap();
        let once = s.apply(&list(TypeExpr::param("u")));
        assert_eq!(s.apply(&once), once);
    }

    #[test]
    fn subtype_examples() {
        let order = list_order();
        assert!(order.subtype_le(&TypeExpr::atom("Int"), &TypeExpr::atom("Real")));
        assert!(order.subtype_le(&list(TypeExpr::atom("Int")), &TypeExpr::atom("Anylist")));
        assert!(order.subtype_le(&TypeExpr::param("u"), &TypeExpr::param("u")));
        assert!(!order.subtype_le(&TypeExpr::atom("Anylist"), &list(TypeExpr::param("u"))));
        assert!(!order.subtype_le(&TypeExpr::param("u"), &TypeExpr::param("v")));
        assert!(!order.subtype_le(&TypeExpr::atom("Real"), &TypeExpr::atom("Int")));
    }

    #[test]
    fn subtype_covariant_arguments() {
        let order = list_order();
        assert!(order.subtype_le(&list(TypeExpr::atom("Int")), &list(TypeExpr::atom("Real"))));
        assert!(!order.subtype_le(&list(TypeExpr::atom("Real")), &list(TypeExpr::atom("Int"))));
    }

    #[test]
    fn max_type_examples() {
        let order = list_order();
        assert_eq!(order.max_type(&TypeExpr::param("u")), TypeExpr::param("u"));
        assert_eq!(order.max_type(&TypeExpr::atom("Int")), TypeExpr::atom("Real"));
        assert_eq!(order.max_type(&list(TypeExpr::atom("Int"))), TypeExpr::atom("Anylist"));
    }

    #[test]
    fn arity_condition_rejected() {
        let err = ConstructorOrder::build(
            vec![
                Constructor { name: "List".into(), arity: 1 },
                Constructor { name: "Anylist".into(), arity: 0 },
            ],
            vec![SubtypeEdge { lo: "Anylist".into(), hi: "List".into(), injection: vec![0] }],
        );
        assert!(matches!(err, Err(SignatureError::ArityOrderViolation { .. })));
    }

    #[test]
    fn incoherent_injections_rejected() {
        // Pair < Mid < Top and Pair < Top directly, with a twisted direct injection.
        let err = ConstructorOrder::build(
            vec![
                Constructor { name: "Pair".into(), arity: 2 },
                Constructor { name: "Mid".into(), arity: 2 },
                Constructor { name: "Top".into(), arity: 2 },
            ],
            vec![
                SubtypeEdge { lo: "Pair".into(), hi: "Mid".into(), injection: vec![0, 1] },
                SubtypeEdge { lo: "Mid".into(), hi: "Top".into(), injection: vec![0, 1] },
                SubtypeEdge { lo: "Pair".into(), hi: "Top".into(), injection: vec![1, 0] },
            ],
        );
        assert!(matches!(err, Err(SignatureError::IncoherentInjections { .. })));
    }

    #[test]
    fn no_maximum_rejected() {
        let err = ConstructorOrder::build(
            vec![
                Constructor { name: "A".into(), arity: 0 },
                Constructor { name: "B".into(), arity: 0 },
                Constructor { name: "C".into(), arity: 0 },
            ],
            vec![
                SubtypeEdge { lo: "A".into(), hi: "B".into(), injection: vec![] },
                SubtypeEdge { lo: "A".into(), hi: "C".into(), injection: vec![] },
            ],
        );
        assert!(matches!(err, Err(SignatureError::NoMaximumConstructor { ctor }) if ctor == "A"));
    }

    #[test]
    fn cycle_rejected() {
        let err = ConstructorOrder::build(
            vec![
                Constructor { name: "A".into(), arity: 0 },
                Constructor { name: "B".into(), arity: 0 },
            ],
            vec![
                SubtypeEdge { lo: "A".into(), hi: "B".into(), injection: vec![] },
                SubtypeEdge { lo: "B".into(), hi: "A".into(), injection: vec![] },
            ],
        );
        assert!(matches!(err, Err(SignatureError::ConstructorCycle { .. })));
    }

    #[test]
    fn empty_order_relates_identical_params_only() {
        let order = ConstructorOrder::empty();
        assert!(order.subtype_le(&TypeExpr::param("u"), &TypeExpr::param("u")));
        assert!(!order.subtype_le(&TypeExpr::param("u"), &TypeExpr::param("v")));
    }

    #[test]
    fn injection_permutation() {
        // Swap < Pair with a permuting injection: argument 1 of Pair is
        // argument 2 of Swap and vice versa.
        let order = ConstructorOrder::build(
            vec![
                Constructor { name: "Swap".into(), arity: 2 },
                Constructor { name: "Pair".into(), arity: 2 },
                Constructor { name: "Int".into(), arity: 0 },
                Constructor { name: "Real".into(), arity: 0 },
            ],
            vec![
                SubtypeEdge { lo: "Swap".into(), hi: "Pair".into(), injection: vec![1, 0] },
                SubtypeEdge { lo: "Int".into(), hi: "Real".into(), injection: vec![] },
            ],
        )
        .unwrap();
        let swap = TypeExpr::comp("Swap", vec![TypeExpr::atom("Real"), TypeExpr::atom("Int")]);
        let pair = TypeExpr::comp("Pair", vec![TypeExpr::atom("Int"), TypeExpr::atom("Real")]);
        assert!(order.subtype_le(&swap, &pair));
        let pair_bad = TypeExpr::comp("Pair", vec![TypeExpr::atom("Real"), TypeExpr::atom("Int")]);
        assert!(!order.subtype_le(&swap, &pair_bad));
        assert_eq!(order.max_type(&swap), pair);
    }

    #[test]
    fn lub_and_glb() {
        let order = list_order();
        assert_eq!(
            order.least_upper_bound(&TypeExpr::atom("Int"), &TypeExpr::atom("Real")),
            Ok(Some(TypeExpr::atom("Real")))
        );
        assert_eq!(
            order.least_upper_bound(&list(TypeExpr::atom("Int")), &TypeExpr::atom("Anylist")),
            Ok(Some(TypeExpr::atom("Anylist")))
        );
        assert_eq!(
            order.least_upper_bound(&TypeExpr::atom("Int"), &list(TypeExpr::atom("Int"))),
            Ok(None)
        );
        assert_eq!(
            order.greatest_lower_bound(&TypeExpr::atom("Int"), &TypeExpr::atom("Real")),
            Ok(Some(TypeExpr::atom("Int")))
        );
    }
}
