use std::collections::HashSet;

use super::Frame;
use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::group::{char_orbit, linear_characters, CharOrbit, FiniteGroup, LinearChar};

/// A `P`-invariant character `sigma` of `N = 1 + J^n` together with an
/// ideal `L`, `J^n <= L <= J^(n-1)` of codimension one over `J^n`, and
/// `Q = 1 + L`.
#[derive(Debug)]
pub struct SigmaData {
    pub n: usize,
    pub n_group: FiniteGroup,
    pub sigma: LinearChar,
    pub l: Subspace,
    pub q_group: FiniteGroup,
}

impl SigmaData {
    pub fn new(frame: &Frame, n: usize, n_group: FiniteGroup, sigma: LinearChar, l: Subspace) -> Result<Self> {
        if n < 2 {
            return Err(Error::PreconditionFailure("n must be at least 2".into()));
        }
        let jn = frame.radical_power(n);
        if jn.is_zero() {
            return Err(Error::PreconditionFailure(format!("J^{n} is zero")));
        }
        if !jn.is_subspace_of(&l) || !l.is_subspace_of(frame.radical_power(n - 1)) || l.dim() != jn.dim() + 1 {
            return Err(Error::PreconditionFailure(
                "L must sit one step above J^n inside J^(n-1)".into(),
            ));
        }
        if !frame.is_ideal(&l) {
            return Err(Error::PreconditionFailure("L is not an ideal".into()));
        }
        sigma.check_group(&n_group)?;
        let expected = frame.one_plus(jn)?;
        if !expected.same_elements(&n_group) {
            return Err(Error::PreconditionFailure("N is not 1 + J^n".into()));
        }
        if !is_invariant_under(frame.group(), frame.p_group(), &n_group, &sigma) {
            return Err(Error::NotInvariant("sigma is not P-invariant".into()));
        }
        let q_group = frame.one_plus(&l)?;
        Ok(Self {
            n,
            n_group,
            sigma,
            l,
            q_group,
        })
    }

    /// Exponent of `sigma` at an element of the frame group lying in `N`.
    fn sigma_exp(&self, frame: &Frame, g: usize) -> Result<u32> {
        let id = self
            .n_group
            .id_of(frame.group().element(g))
            .ok_or_else(|| Error::PreconditionFailure("element outside N".into()))?;
        Ok(self.sigma.exp(id))
    }

    /// Exponent of `sigma([g, h])` for frame-group ids `g` in `P`, `h` in `Q`.
    fn pairing(&self, frame: &Frame, g: usize, h: usize) -> Result<u32> {
        self.sigma_exp(frame, frame.group().commutator(g, h))
    }
}

/// `theta(h x h^-1) = theta(x)` for all `h` in `by` and `x` in `q`, with all
/// three groups inside `ambient`.
pub(crate) fn is_invariant_under(ambient: &FiniteGroup, by: &FiniteGroup, q: &FiniteGroup, theta: &LinearChar) -> bool {
    let (Ok(by_emb), Ok(q_emb)) = (by.embedding_into(ambient), q.embedding_into(ambient)) else {
        return false;
    };
    by.generators().iter().all(|&h| {
        q.generators().iter().all(|&x| {
            let y = ambient.conjugate(by_emb[h], q_emb[x]);
            q.id_of(ambient.element(y))
                .is_some_and(|id| theta.exp(id) == theta.exp(x))
        })
    })
}

/// Every `P`-invariant character of `1 + J^n`, paired with every layer ideal
/// `L_i` at level `n`.
pub fn sigma_instances(frame: &Frame, n: usize) -> Result<Vec<SigmaData>> {
    let jn = frame.radical_power(n);
    if n < 2 || jn.is_zero() {
        return Ok(Vec::new());
    }
    let layers = frame.layer_ideals(n)?;
    let mut out = Vec::new();
    let probe = frame.one_plus(jn)?;
    for sigma in linear_characters(&probe)? {
        if !is_invariant_under(frame.group(), frame.p_group(), &probe, &sigma) {
            continue;
        }
        for l in &layers {
            let ng = frame.one_plus(jn)?;
            let s = LinearChar::new(&ng, sigma.conductor(), sigma.exps().to_vec())?;
            out.push(SigmaData::new(frame, n, ng, s, l.clone())?);
        }
    }
    Ok(out)
}

/// Elements of `P` given by their radical parts, as frame-group ids.
fn one_plus_ids(frame: &Frame, space: &Subspace) -> Result<Vec<usize>> {
    let alg = frame.ambient();
    space
        .elements()
        .map(|a| {
            frame
                .group()
                .id_of(&alg.add(alg.one(), &a))
                .ok_or_else(|| Error::PreconditionFailure("element outside the frame".into()))
        })
        .collect()
}

/// `J_sigma = { a in J : sigma([1+a, 1+u]) = 1 for all u in L }`, certified to
/// be a subspace containing `J^2`, of codimension at most one, with
/// `1 + J_sigma` equal to the kernel of `phi_sigma`.
pub fn j_sigma(frame: &Frame, s: &SigmaData) -> Result<Subspace> {
    let alg = frame.ambient();
    let q_emb = s.q_group.embedding_into(frame.group())?;
    let q_gens: Vec<usize> = s.q_group.generators().iter().map(|&h| q_emb[h]).collect();
    let mut members = Vec::new();
    let mut kernel = HashSet::new();
    for a in frame.radical().elements() {
        let g = frame
            .group()
            .id_of(&alg.add(alg.one(), &a))
            .ok_or_else(|| Error::PreconditionFailure("radical element outside the frame".into()))?;
        let mut trivial = true;
        for &h in &q_gens {
            if s.pairing(frame, g, h)? != 0 {
                trivial = false;
                break;
            }
        }
        if trivial {
            members.push(a);
            kernel.insert(g);
        }
    }
    let span = Subspace::of(alg, &members);
    let fail = |m: &str| Err(Error::VerificationFailure(format!("J_sigma: {m}")));
    if span.size() != members.len() as u64 {
        return fail("not a subspace");
    }
    if !frame.radical_power(2).is_subspace_of(&span) {
        return fail("does not contain J^2");
    }
    if span.dim() + 1 < frame.radical().dim() {
        return fail("codimension exceeds one");
    }
    // kernel of phi_sigma, evaluated on all of Q
    for &g in &one_plus_ids(frame, frame.radical())? {
        let phi = phi_sigma(frame, s, g)?;
        if phi.is_trivial() != kernel.contains(&g) {
            return fail("kernel of phi_sigma differs from 1 + J_sigma");
        }
    }
    Ok(span)
}

/// `phi_sigma(g)(h) = sigma([g, h])` for `g` in `P` (a frame-group id), as a
/// character of `Q`.
pub fn phi_sigma(frame: &Frame, s: &SigmaData, g: usize) -> Result<LinearChar> {
    let alg = frame.ambient();
    if !frame.radical().contains(&alg.sub(frame.group().element(g), alg.one())) {
        return Err(Error::PreconditionFailure("phi_sigma is defined on P".into()));
    }
    let q_emb = s.q_group.embedding_into(frame.group())?;
    let exps = q_emb
        .iter()
        .map(|&h| s.pairing(frame, g, h))
        .collect::<Result<Vec<u32>>>()?;
    LinearChar::new(&s.q_group, s.sigma.conductor(), exps)
}

/// `sigma([1 + alpha a, 1 + u]) = sigma([1 + a, 1 + alpha u])` for every scalar
/// `alpha`, every `a` in `J` and every `u` in `J^(n-1)`.
pub fn scalar_relation_holds(frame: &Frame, s: &SigmaData) -> Result<bool> {
    let alg = frame.ambient();
    let g = frame.group();
    let upper = frame.radical_power(s.n - 1);
    let id = |v: &[u32]| {
        g.id_of(&alg.add(alg.one(), v))
            .ok_or_else(|| Error::PreconditionFailure("element outside the frame".into()))
    };
    for alpha in 0..alg.p() {
        for a in frame.radical().elements() {
            let x1 = id(&alg.scale(alpha, &a))?;
            let x2 = id(&a)?;
            for u in upper.elements() {
                let y1 = id(&u)?;
                let y2 = id(&alg.scale(alpha, &u))?;
                if s.pairing(frame, x1, y1)? != s.pairing(frame, x2, y2)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Sum of all ideals contained in `space`: the set of `x` with `b x c` in
/// `space` for all `b, c` in the frame's subalgebra.
pub fn largest_ideal_within(frame: &Frame, space: &Subspace) -> Subspace {
    let alg = frame.ambient();
    let basis = frame.subalgebra().space().basis();
    let members: Vec<Vec<u32>> = space
        .elements()
        .filter(|x| {
            basis
                .iter()
                .all(|b| basis.iter().all(|c| space.contains(&alg.mul(&alg.mul(b, x), c))))
        })
        .collect();
    Subspace::of(alg, &members)
}

/// Whether `I cap J_sigma` is an ideal, for an ideal `J^2 <= I <= J` and a
/// `G`-invariant `sigma`.
pub fn ideal_intersection_test(frame: &Frame, ideal: &Subspace, s: &SigmaData) -> Result<bool> {
    if !is_invariant_under(frame.group(), frame.group(), &s.n_group, &s.sigma) {
        return Err(Error::PreconditionFailure("sigma is not G-invariant".into()));
    }
    if !frame.radical_power(2).is_subspace_of(ideal) || !ideal.is_subspace_of(frame.radical()) || !frame.is_ideal(ideal)
    {
        return Err(Error::PreconditionFailure(
            "I must be an ideal between J^2 and J".into(),
        ));
    }
    let meet = ideal.intersection(&j_sigma(frame, s)?);
    let largest = largest_ideal_within(frame, &meet);
    Ok(frame.is_ideal(&meet) && largest == meet)
}

/// The extensions of `sigma` to `Q`, with their `P`-orbits.
#[derive(Debug)]
pub struct Extensions {
    /// All characters of `Q` restricting to `sigma` on `N`, in table order.
    pub all: Vec<LinearChar>,
    pub j_sigma: Subspace,
    /// `P`-orbits of the extensions.
    pub orbits: Vec<CharOrbit>,
}

impl Extensions {
    pub fn theta(&self) -> &LinearChar {
        &self.all[0]
    }
}

/// `true` when `theta` restricted to `N` equals `sigma`.
pub(crate) fn extends(s: &SigmaData, theta: &LinearChar) -> Result<bool> {
    let r = theta.restrict(&s.q_group, &s.n_group)?;
    Ok(r.same_values(&s.sigma))
}

/// All extensions of `sigma` from `N` to `Q`, certifying `[Q,Q] <= ker sigma`,
/// the count `|Q/N|`, `P_theta = 1 + J_sigma` for every extension, and a
/// single `P`-orbit whenever `P_theta != P`.
pub fn extend_character(frame: &Frame, s: &SigmaData) -> Result<Extensions> {
    let g = frame.group();
    let q_emb = s.q_group.embedding_into(g)?;
    for &x in s.q_group.generators() {
        for &y in s.q_group.generators() {
            if s.sigma_exp(frame, g.commutator(q_emb[x], q_emb[y]))? != 0 {
                return Err(Error::NoExtension("[Q, Q] is not in the kernel of sigma".into()));
            }
        }
    }
    let mut all = Vec::new();
    for theta in linear_characters(&s.q_group)? {
        if extends(s, &theta)? {
            all.push(theta);
        }
    }
    let index = s.q_group.order() / s.n_group.order();
    if all.len() != index {
        return Err(Error::NoExtension(format!(
            "{} extensions, expected {index}",
            all.len()
        )));
    }
    let js = j_sigma(frame, s)?;
    let expected: HashSet<Vec<u32>> = js
        .elements()
        .map(|a| frame.ambient().add(frame.ambient().one(), &a))
        .collect();
    let p = frame.p_group();
    let mut orbits: Vec<CharOrbit> = Vec::new();
    for theta in &all {
        let orbit = char_orbit(p, &s.q_group, theta)?;
        let stab: HashSet<Vec<u32>> = orbit.stabilizer.elements().map(<[u32]>::to_vec).collect();
        if stab != expected {
            return Err(Error::VerificationFailure(
                "P-stabilizer of an extension differs from 1 + J_sigma".into(),
            ));
        }
        if !orbits.iter().any(|o| o.contains(theta)) {
            orbits.push(orbit);
        }
    }
    if js != *frame.radical() && orbits.len() != 1 {
        return Err(Error::VerificationFailure(format!(
            "extensions split into {} P-orbits",
            orbits.len()
        )));
    }
    Ok(Extensions {
        all,
        j_sigma: js,
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::group::DEFAULT_MAX_ORDER;
    use std::sync::Arc;

    fn frame(n: usize, p: u32) -> Frame {
        let a = Arc::new(AlgebraSpec::borel(n, p).build().unwrap());
        Frame::new(&a, DEFAULT_MAX_ORDER).unwrap()
    }

    fn u3_instance(f: &Frame) -> SigmaData {
        sigma_instances(f, 2)
            .unwrap()
            .into_iter()
            .find(|s| !s.sigma.is_trivial() && s.l.contains(&f.ambient().basis(1)))
            .unwrap()
    }

    #[test]
    fn j_sigma_on_u3() {
        let f = frame(3, 2);
        let s = u3_instance(&f);
        let a = f.ambient();
        let js = j_sigma(&f, &s).unwrap();
        assert_eq!(js, Subspace::of(a, &[a.basis(1), a.basis(2)]));
        assert_eq!(f.radical().dim() - js.dim(), 1);
        assert!(scalar_relation_holds(&f, &s).unwrap());
    }

    #[test]
    fn trivial_sigma_gives_whole_radical() {
        let f = frame(3, 2);
        let s = sigma_instances(&f, 2)
            .unwrap()
            .into_iter()
            .find(|s| s.sigma.is_trivial())
            .unwrap();
        assert_eq!(j_sigma(&f, &s).unwrap(), *f.radical());
        let ext = extend_character(&f, &s).unwrap();
        assert_eq!(ext.all.len(), 2);
        assert_eq!(ext.orbits.len(), 2);
    }

    #[test]
    fn phi_sigma_is_a_homomorphism_with_the_right_image() {
        let f = frame(3, 2);
        let s = u3_instance(&f);
        let p = f.p_group();
        let emb = p.embedding_into(f.group()).unwrap();
        let phis: Vec<LinearChar> = emb.iter().map(|&g| phi_sigma(&f, &s, g).unwrap()).collect();
        for x in 0..p.order() {
            for y in 0..p.order() {
                let xy = phis[p.mul(x, y)].clone();
                assert!(xy.same_values(&phis[x].mul(&phis[y]).unwrap()));
            }
        }
        let image: HashSet<Vec<u32>> = phis.iter().map(|c| c.normalized().exps().to_vec()).collect();
        let js = j_sigma(&f, &s).unwrap();
        assert_eq!(image.len() as u64, p.order() as u64 / js.size());
        for phi in &phis {
            let on_n = phi.restrict(&s.q_group, &s.n_group).unwrap();
            assert!(on_n.is_trivial());
        }
    }

    #[test]
    fn extensions_on_u3() {
        let f = frame(3, 2);
        let s = u3_instance(&f);
        let ext = extend_character(&f, &s).unwrap();
        assert_eq!(ext.all.len(), 2);
        assert_eq!(ext.orbits.len(), 1);
        assert_eq!(ext.orbits[0].len(), 2);
    }

    #[test]
    fn instances_on_b3_f3_satisfy_the_lemmas() {
        let f = frame(3, 3);
        let all = sigma_instances(&f, 2).unwrap();
        assert!(!all.is_empty());
        for s in &all {
            let js = j_sigma(&f, s).unwrap();
            assert!(scalar_relation_holds(&f, s).unwrap());
            let ext = extend_character(&f, s).unwrap();
            assert_eq!(ext.all.len(), 3);
            assert_eq!(ext.j_sigma, js);
        }
    }

    #[test]
    fn ideal_intersections() {
        let f = frame(3, 2);
        for s in sigma_instances(&f, 2).unwrap() {
            assert!(ideal_intersection_test(&f, f.radical(), &s).unwrap());
            assert!(ideal_intersection_test(&f, f.radical_power(2), &s).unwrap());
        }
    }

    #[test]
    fn malformed_sigma_data_is_rejected() {
        let f = frame(3, 2);
        let jn = f.radical_power(2).clone();
        let ng = f.one_plus(&jn).unwrap();
        let sigma = LinearChar::trivial(&ng);
        assert!(matches!(
            SigmaData::new(&f, 2, ng, sigma, f.radical().clone()),
            Err(Error::PreconditionFailure(_))
        ));

        // on U4(F2), a character of 1 + J^2 nontrivial at 1 + e14 is not P-invariant
        let f = frame(4, 2);
        let a = f.ambient();
        let ng = f.one_plus(f.radical_power(2)).unwrap();
        let x = ng.id_of(&a.add(a.one(), &a.basis(3))).unwrap();
        let sigma = linear_characters(&ng)
            .unwrap()
            .into_iter()
            .find(|c| c.exp(x) != 0)
            .unwrap();
        let l = f.layer_ideals(2).unwrap().remove(0);
        assert!(matches!(
            SigmaData::new(&f, 2, ng, sigma, l),
            Err(Error::NotInvariant(_))
        ));
    }
}
