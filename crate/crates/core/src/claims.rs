//! Named, individually runnable checks of the headline computations. The
//! CLI and the acceptance tests both read this registry.

use std::time::Instant;

use glob::Pattern;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::belyi::{build_belyi, verify_chain};
use crate::cover::{fibre_power_matches_closure, regular_cover, MonodromyMap};
use crate::dessin::Dessin;
use crate::exactmath::{exact_string, NumberField, Polynomial};
use crate::fixtures::{a7, a7_system, beauville_pair, perms, s3_pair, TUPLE_1, TUPLE_2, TUPLE_555};
use crate::perm::{generate, simultaneous_conjugator, PermError, PermGroup, Permutation};
use crate::spherical::{
    enumerate_systems_with_cap, hurwitz_classify, is_real, RealityConvention, SphericalError, UnorderedType,
    DEFAULT_ENUMERATION_CAP,
};
use crate::surfaces::{
    diagonal_action_free, fiber_product_presentation, pi1_exact_sequence_report, surface_invariants,
    PolygonalGroupData, SurfaceError,
};
use crate::twocrit::{closure_triangle_system, enumerate_classes, monodromy_group_check, real_classes};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClaimError {
    #[error("invalid filter pattern {0:?}")]
    BadPattern(String),
    #[error("no claim matches {0:?}")]
    NoMatch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order for which systems are enumerated.
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { enumeration_cap: DEFAULT_ENUMERATION_CAP }
    }
}

/// Why a claim produced no value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Cap(String),
    Error(String),
}

impl From<SphericalError> for Failure {
    fn from(e: SphericalError) -> Self {
        match e {
            SphericalError::CapExceeded(..) | SphericalError::Perm(PermError::CapExceeded(_)) => {
                Failure::Cap(e.to_string())
            }
            e => Failure::Error(e.to_string()),
        }
    }
}

macro_rules! plain_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Error(e.to_string())
            }
        }
    )*};
}
plain_failure!(
    PermError,
    SurfaceError,
    crate::cover::CoverError,
    crate::belyi::BelyiError,
    crate::curves::CurveError,
    crate::twocrit::TwoCritError
);

type Thunk = fn(&Limits) -> Result<String, Failure>;

pub struct Claim {
    pub id: &'static str,
    pub anchor: &'static str,
    pub expected: &'static str,
    run: Thunk,
}

impl Claim {
    pub fn run(&self, limits: &Limits) -> ClaimReport {
        let start = Instant::now();
        let outcome = (self.run)(limits);
        let ms = start.elapsed().as_millis();
        let (computed, capped) = match outcome {
            Ok(v) => (v, false),
            Err(Failure::Cap(e)) => (format!("error: {e}"), true),
            Err(Failure::Error(e)) => (format!("error: {e}"), false),
        };
        ClaimReport {
            id: self.id.to_string(),
            anchor: self.anchor.to_string(),
            expected: self.expected.to_string(),
            matched: computed == self.expected,
            computed,
            capped,
            ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub id: String,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub matched: bool,
    /// The claim hit a resource cap instead of producing a value.
    pub capped: bool,
    pub ms: u128,
}

fn flag(b: bool) -> String {
    b.to_string()
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn s7() -> PermGroup {
    PermGroup::symmetric(7)
}

fn genus_of(orders: &[&str; 3]) -> Result<String, Failure> {
    let g = a7();
    Ok(regular_cover(g.clone(), perms(orders, 7))?.genus()?.to_string())
}

fn classify_a7(t: &str, limits: &Limits) -> Result<(usize, usize, usize), Failure> {
    let g = a7();
    let t: UnorderedType = t.parse()?;
    let systems = enumerate_systems_with_cap(&g, &t, limits.enumeration_cap)?;
    let c = hurwitz_classify(&systems, Some(&s7()))?;
    Ok((systems.len(), c.braid.len(), c.ambient.len()))
}

fn sqrt2_chain() -> Result<crate::belyi::CriticalValueChain, Failure> {
    Ok(build_belyi(3, &Polynomial::parse("x^2-2").map_err(|e| Failure::Error(e.to_string()))?)?)
}

fn twocrit_n7() -> Result<Vec<crate::twocrit::MonodromyClass>, Failure> {
    let t0 = "2,2,1,1,1".parse().map_err(|e: PermError| Failure::Error(e.to_string()))?;
    let t1 = "3,2,2".parse().map_err(|e: PermError| Failure::Error(e.to_string()))?;
    Ok(enumerate_classes(7, &t0, &t1)?)
}

fn c_belyi_audit(_: &Limits) -> Result<String, Failure> {
    Ok(flag(verify_chain(&sqrt2_chain()?).ok))
}

fn c_belyi_rset(_: &Limits) -> Result<String, Failure> {
    let c = sqrt2_chain()?;
    let e = c.exponent().ok_or_else(|| Failure::Error("chain has no exponent step".into()))?;
    let mut r = e.r.clone();
    r.sort();
    Ok(join(r.iter().map(exact_string)))
}

fn c_belyi_terminal(_: &Limits) -> Result<String, Failure> {
    Ok(flag(sqrt2_chain()?.last_values().within_zero_one_infinity()))
}

fn c_closure_degree4(_: &Limits) -> Result<String, Failure> {
    let s4 = PermGroup::symmetric(4);
    let mut all = true;
    for a in s4.elements() {
        for b in s4.elements() {
            if let Ok(m) = MonodromyMap::from_pair(a, b) {
                all &= fibre_power_matches_closure(&m)?;
            }
        }
    }
    Ok(flag(all))
}

fn c_dessin(_: &Limits) -> Result<String, Failure> {
    let cl = twocrit_n7()?;
    let first = real_classes(&cl).into_iter().next().ok_or_else(|| Failure::Error("no real class".into()))?;
    let d = Dessin::of_polynomial(&first.representative);
    Ok(join([d.black_count(), d.white_count(), d.edge_count()]))
}

fn c_euler(j: usize) -> Result<String, Failure> {
    let i = surface_invariants(&beauville_pair(&a7(), j))?;
    Ok(join([i.euler, i.chi, i.ksquared]))
}

fn c_euler_1(_: &Limits) -> Result<String, Failure> {
    c_euler(1)
}

fn c_euler_2(_: &Limits) -> Result<String, Failure> {
    c_euler(2)
}

fn c_free_1(_: &Limits) -> Result<String, Failure> {
    Ok(flag(diagonal_action_free(&beauville_pair(&a7(), 1))))
}

fn c_free_2(_: &Limits) -> Result<String, Failure> {
    Ok(flag(diagonal_action_free(&beauville_pair(&a7(), 2))))
}

fn c_genus_267(_: &Limits) -> Result<String, Failure> {
    genus_of(&TUPLE_1)
}

fn c_genus_555(_: &Limits) -> Result<String, Failure> {
    genus_of(&TUPLE_555)
}

fn c_hurwitz_267(l: &Limits) -> Result<String, Failure> {
    let (n, braid, ambient) = classify_a7("2,6,7", l)?;
    Ok(join([n, braid, ambient]))
}

fn c_hurwitz_555(l: &Limits) -> Result<String, Failure> {
    let (n, braid, ambient) = classify_a7("5,5,5", l)?;
    Ok(join([n, braid, ambient]))
}

fn c_lemma1(_: &Limits) -> Result<String, Failure> {
    let k = NumberField::new(Polynomial::parse("x^2-2").map_err(|e| Failure::Error(e.to_string()))?)
        .map_err(|e| Failure::Error(e.to_string()))?;
    let a = k.generator();
    let b = -&a;
    let same = crate::curves::lemma1_decision(3, &a, &a)?;
    let other = crate::curves::lemma1_decision(3, &a, &b)?;
    Ok(join([same, other]))
}

fn c_pair_conjugate(_: &Limits) -> Result<String, Failure> {
    let (t1, t2) = (perms(&TUPLE_1, 7), perms(&TUPLE_2, 7));
    Ok(flag(simultaneous_conjugator(&t1, &t2, None)?.is_some()))
}

fn c_pair_orders(_: &Limits) -> Result<String, Failure> {
    let mut out = Vec::new();
    for t in [TUPLE_1, TUPLE_2] {
        out.push(generate(&perms(&t, 7))?.order());
    }
    Ok(join(out))
}

fn c_pair_products(_: &Limits) -> Result<String, Failure> {
    let mut out = Vec::new();
    for t in [TUPLE_1, TUPLE_2] {
        let p = perms(&t, 7);
        out.push(p.iter().fold(Permutation::identity(7), |acc, x| acc.then(x)).is_identity());
    }
    Ok(join(out))
}

fn c_pair_real(_: &Limits) -> Result<String, Failure> {
    let g = a7();
    let s7 = s7();
    let mut out = Vec::new();
    for t in [TUPLE_1, TUPLE_2] {
        out.push(is_real(&a7_system(&g, &t), Some(&s7), RealityConvention::ReversedInverse).ambient);
    }
    Ok(join(out))
}

fn c_pi1(_: &Limits) -> Result<String, Failure> {
    Ok(pi1_exact_sequence_report(&beauville_pair(&a7(), 1))?.sequence())
}

fn c_presentation_s3(_: &Limits) -> Result<String, Failure> {
    let (s1, s2) = s3_pair();
    let p = fiber_product_presentation(
        &PolygonalGroupData::of_system(&s1)?,
        &s1,
        &PolygonalGroupData::of_system(&s2)?,
        &s2,
    )?;
    Ok(join([p.coset_count(), p.generator_count()]))
}

fn c_twocrit_closures(_: &Limits) -> Result<String, Failure> {
    let (t1, t2) = (perms(&TUPLE_1, 7), perms(&TUPLE_2, 7));
    let mut out = Vec::new();
    for c in real_classes(&twocrit_n7()?) {
        let s = closure_triangle_system(&c.representative)?;
        let tag = if simultaneous_conjugator(s.entries(), &t1, None)?.is_some() {
            "(1)"
        } else if simultaneous_conjugator(s.entries(), &t2, None)?.is_some() {
            "(2)"
        } else {
            "none"
        };
        out.push(tag);
    }
    Ok(join(out))
}

fn c_twocrit_groups(_: &Limits) -> Result<String, Failure> {
    let mut out = Vec::new();
    for c in real_classes(&twocrit_n7()?) {
        let g = monodromy_group_check(&c.representative)?;
        out.push(format!("{}{}", g.order, if g.is_alternating { "A" } else { "" }));
    }
    Ok(join(out))
}

fn c_twocrit_real(_: &Limits) -> Result<String, Failure> {
    let cl = twocrit_n7()?;
    Ok(join([cl.len(), real_classes(&cl).len()]))
}

/// All claims, sorted by id.
pub fn registry() -> Vec<Claim> {
    let c = |id, anchor, expected, run: Thunk| Claim { id, anchor, expected, run };
    let mut v = vec![
        c(
            "belyi-sqrt2-audit",
            "independent recomputation of every chain step for x^2-2, genus 3",
            "true",
            c_belyi_audit,
        ),
        c(
            "belyi-sqrt2-rset",
            "rational values fed to the exponent step for x^2-2, genus 3",
            "0,1,2,4,9,16,25,36",
            c_belyi_rset,
        ),
        c("belyi-sqrt2-terminal", "final critical values lie in {0, 1, oo}", "true", c_belyi_terminal),
        c(
            "closure-fibre-power-s4",
            "fibre-power components equal the normal closure, all pairs in S4",
            "true",
            c_closure_degree4,
        ),
        c("dessin-real-class-1", "black, white and edge counts of the first real degree-7 dessin", "5,3,7", c_dessin),
        c("euler-s1", "e, chi, K^2 of the surface from tuple (1)", "192,48,384", c_euler_1),
        c("euler-s2", "e, chi, K^2 of the surface from tuple (2)", "192,48,384", c_euler_2),
        c("free-s1", "A7 acts freely on the product for tuple (1)", "true", c_free_1),
        c("free-s2", "A7 acts freely on the product for tuple (2)", "true", c_free_2),
        c("genus-267-closure", "genus of the regular A7 cover of type (2,6,7)", "241", c_genus_267),
        c("genus-555-closure", "genus of the regular A7 cover of type (5,5,5)", "505", c_genus_555),
        c("hurwitz-267-a7", "systems, braid orbits, S7 classes of type (2,6,7) in A7", "10080,4,2", c_hurwitz_267),
        c("hurwitz-555-a7", "systems, braid orbits, S7 classes of type (5,5,5) in A7", "5040,1,1", c_hurwitz_555),
        c("lemma1-sqrt2-genus3", "branch sets for a = b and a = -b over Q(sqrt 2), genus 3", "true,false", c_lemma1),
        c("pair-conjugate-s7", "tuples (1) and (2) are simultaneously conjugate in S7", "false", c_pair_conjugate),
        c("pair-group-orders", "orders of the groups generated by tuples (1) and (2)", "2520,2520", c_pair_orders),
        c("pair-product-identity", "tuples (1) and (2) multiply to the identity", "true,true", c_pair_products),
        c("pair-real-s7", "tuples (1) and (2) are real up to braids and S7", "true,true", c_pair_real),
        c(
            "pi1-sequence-s1",
            "exact sequence for the fundamental group of the first surface",
            "1 -> Pi_241 x Pi_505 -> pi_1(S) -> G -> 1, |G| = 2520",
            c_pi1,
        ),
        c("presentation-s3", "cosets and Schreier generators for the S3 pair", "6,25", c_presentation_s3),
        c(
            "twocrit-n7-closures",
            "closure triples of the real degree-7 classes match tuples",
            "(1),(2)",
            c_twocrit_closures,
        ),
        c("twocrit-n7-groups", "monodromy groups of the real degree-7 classes", "2520A,2520A", c_twocrit_groups),
        c("twocrit-n7-real", "classes and real classes of types 2,2,1,1,1 / 3,2,2", "2,2", c_twocrit_real),
    ];
    v.sort_by_key(|c| c.id);
    v
}

/// Claims whose id matches the glob, or all of them.
pub fn select(filter: Option<&str>) -> Result<Vec<Claim>, ClaimError> {
    let all = registry();
    let Some(f) = filter else { return Ok(all) };
    let pat = Pattern::new(f).map_err(|_| ClaimError::BadPattern(f.to_string()))?;
    let chosen: Vec<Claim> = all.into_iter().filter(|c| pat.matches(c.id)).collect();
    if chosen.is_empty() {
        return Err(ClaimError::NoMatch(f.to_string()));
    }
    Ok(chosen)
}

/// Runs the selected claims in parallel; reports come back sorted by id.
pub fn run_claims(filter: Option<&str>, limits: &Limits) -> Result<Vec<ClaimReport>, ClaimError> {
    let claims = select(filter)?;
    Ok(claims.par_iter().map(|c| c.run(limits)).collect())
}

fn value(s: &str) -> Value {
    match s.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(s),
    }
}

/// `{"version", "claims": [{"id", "anchor", "expected", "computed", "match",
/// "ms"}]}`. Without timing, `ms` is omitted so the output is byte-stable.
pub fn report_json(reports: &[ClaimReport], timing: bool) -> String {
    let claims: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut o = json!({
                "id": r.id,
                "anchor": r.anchor,
                "expected": value(&r.expected),
                "computed": value(&r.computed),
                "match": r.matched,
            });
            if timing {
                o["ms"] = json!(r.ms as u64);
            }
            o
        })
        .collect();
    let doc = json!({ "version": env!("CARGO_PKG_VERSION"), "claims": claims });
    serde_json::to_string_pretty(&doc).expect("json values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn filters() {
        let genus: Vec<&str> = select(Some("genus-*")).unwrap().iter().map(|c| c.id).collect();
        assert_eq!(genus, ["genus-267-closure", "genus-555-closure"]);
        assert_eq!(select(Some("nonexistent")).err(), Some(ClaimError::NoMatch("nonexistent".into())));
        assert!(matches!(select(Some("[")), Err(ClaimError::BadPattern(_))));
    }

    #[test]
    fn genus_claims_match() {
        let r = run_claims(Some("genus-*"), &Limits::default()).unwrap();
        assert!(r.iter().all(|r| r.matched), "{r:?}");
        assert_eq!(r[0].computed, "241");
    }

    #[test]
    fn json_shapes() {
        let empty = report_json(&[], false);
        let v: Value = serde_json::from_str(&empty).unwrap();
        assert_eq!(v["claims"], json!([]));
        assert!(v["version"].is_string());

        let failed = ClaimReport {
            id: "x".into(),
            anchor: "a".into(),
            expected: "1/2".into(),
            computed: "3".into(),
            matched: false,
            capped: false,
            ms: 7,
        };
        let v: Value = serde_json::from_str(&report_json(std::slice::from_ref(&failed), true)).unwrap();
        assert_eq!(v["claims"][0]["match"], json!(false));
        assert_eq!(v["claims"][0]["expected"], json!("1/2"));
        assert_eq!(v["claims"][0]["computed"], json!(3));
        assert_eq!(v["claims"][0]["ms"], json!(7));
        let v: Value = serde_json::from_str(&report_json(&[failed], false)).unwrap();
        assert!(v["claims"][0].get("ms").is_none());
    }

    #[test]
    fn caps_are_reported() {
        let r = run_claims(Some("hurwitz-555-a7"), &Limits { enumeration_cap: 100 }).unwrap();
        assert!(r[0].capped && !r[0].matched);
    }
}
