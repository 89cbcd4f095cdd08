//! `S_c*(a1 ... an)` as a quotient of a subalgebra of `S_53^n`, and as a
//! subalgebra of `A(k, p)`.

use serde::Serialize;

use crate::algebra::{
    direct_product, generate_subalgebra, ideal_quotient, product_coords, product_index, ElementMap, FiniteSemiring,
    IdealFilter,
};
use crate::builtin::{builtin, Builtin};
use crate::error::{Error, Result};
use crate::iso::find_isomorphism;
use crate::recheck;
use crate::word_semirings::{chain_word, word_semiring, WordElem, WordSemiring, WordSemiringSpec};

use super::separation::{build_a, SeparationInstance};

/// Largest `n` for the reconstruction (`S_53^n` has `3^n` elements).
pub const RECONSTRUCT_GUARD: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionReport {
    pub n: usize,
    pub product_size: usize,
    pub generated_size: usize,
    pub ideal_size: usize,
    pub quotient_size: usize,
    /// `a_i -> class of alpha_i`, extended multiplicatively, re-checked as an isomorphism.
    pub natural_map_ok: bool,
    /// An isomorphism found by search, re-checked.
    pub search_found: bool,
    pub generator_images: Vec<(String, String)>,
    #[serde(skip)]
    pub quotient: FiniteSemiring,
    #[serde(skip)]
    pub target: FiniteSemiring,
    #[serde(skip)]
    pub natural_map: ElementMap,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.natural_map_ok && self.search_found && self.quotient_size == 1 << self.n
    }
}

/// Builds `S_53^n`, generates `A_n` from `alpha_i = (1, .., a, .., 1)`, collapses
/// the elements with a 0 coordinate, and compares the result with
/// `S_c*(a1 ... an)` built directly from words.
pub fn reconstruct_sc_star(n: usize) -> Result<ReconstructionReport> {
    if n == 0 || n > RECONSTRUCT_GUARD {
        return Err(Error::input(format!("n must lie in 1..={RECONSTRUCT_GUARD}")));
    }
    let s53 = builtin(Builtin::S53);
    let [zero, a, one] = ["0", "a", "1"].map(|e| s53.element(e).expect("S_53 element"));
    let product = direct_product(&vec![&s53; n])?;
    let sizes = vec![3usize; n];
    let alphas: Vec<usize> = (0..n)
        .map(|i| {
            let coords: Vec<usize> = (0..n).map(|j| if j == i { a } else { one }).collect();
            product_index(&coords, &sizes)
        })
        .collect();
    let (generated, inclusion) = generate_subalgebra(&product, &alphas)?;
    let j_members: Vec<usize> =
        (0..generated.size()).filter(|&x| product_coords(inclusion.apply(x), &sizes).contains(&zero)).collect();
    let ideal = IdealFilter::new(&generated, j_members.iter().copied())?;
    let (quotient, qmap) = ideal_quotient(&generated, &ideal)?;

    let target = word_semiring(&WordSemiringSpec::divisibility(vec![chain_word("a", n)], false))?;
    let alpha_classes: Vec<usize> = alphas
        .iter()
        .map(|&g| {
            let local = inclusion.images().iter().position(|&y| y == g).expect("generator is in A_n");
            qmap.apply(local)
        })
        .collect();
    let class_of_j = quotient.size() - 1;
    let images: Vec<usize> = target
        .carrier
        .iter()
        .map(|e| match e {
            WordElem::Word(w) => {
                let mut acc: Option<usize> = None;
                for x in w.letters() {
                    let i: usize = x.as_str()[1..].parse().expect("letters are a1..an");
                    let c = alpha_classes[i - 1];
                    acc = Some(acc.map_or(c, |y| quotient.mul(y, c)));
                }
                acc.expect("nonempty word")
            }
            _ => class_of_j,
        })
        .collect();
    let natural_map = ElementMap::new(images, quotient.size());
    let natural_map_ok = recheck::is_isomorphism(&target.algebra, &quotient, &natural_map);
    let search_found = find_isomorphism(&target.algebra, &quotient).is_found();
    let generator_images =
        (1..=n).map(|i| (format!("a{i}"), quotient.element_name(alpha_classes[i - 1]).to_string())).collect();
    Ok(ReconstructionReport {
        n,
        product_size: product.size(),
        generated_size: generated.size(),
        ideal_size: j_members.len(),
        quotient_size: quotient.size(),
        natural_map_ok,
        search_found,
        generator_images,
        quotient,
        target: target.algebra,
        natural_map,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub k: usize,
    pub p: usize,
    pub source_size: usize,
    pub image_size: usize,
    pub injective: bool,
    pub homomorphic: bool,
    /// The image is closed under the operations of `A(k, p)`.
    pub image_closed: bool,
    pub generator_images: Vec<(String, String)>,
    #[serde(skip)]
    pub map: ElementMap,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.injective && self.homomorphic && self.image_closed && self.image_size == 1 << self.k
    }
}

/// Sends `a_i` to the block `a_((i-1)p+1) ... a_(ip)` of `A(k, p)`.
pub fn embed_sc_star_in_a(k: usize, p: usize) -> Result<EmbeddingReport> {
    let inst = build_a(k, p)?;
    let source = word_semiring(&WordSemiringSpec::divisibility(vec![chain_word("a", k)], false))?;
    let map = block_map(&source, &inst);
    let s = &source.algebra;
    let t = &inst.algebra;
    let mut image: Vec<usize> = map.images().to_vec();
    image.sort_unstable();
    image.dedup();
    let generator_images = (1..=k)
        .map(|i| {
            let e = source.index_of_word(&single(i)).expect("letter");
            (format!("a{i}"), t.element_name(map.apply(e)).to_string())
        })
        .collect();
    Ok(EmbeddingReport {
        k,
        p,
        source_size: s.size(),
        image_size: image.len(),
        injective: image.len() == s.size(),
        homomorphic: recheck::is_homomorphism(s, t, &map),
        image_closed: recheck::is_closed(t, &image),
        generator_images,
        map,
    })
}

fn single(i: usize) -> crate::terms::Word {
    crate::terms::Word::single(crate::terms::Var::indexed("a", i))
}

fn block_map(source: &WordSemiring, inst: &SeparationInstance) -> ElementMap {
    let p = inst.p;
    let t = &inst.algebra;
    let images = source
        .carrier
        .iter()
        .map(|e| match e {
            WordElem::Word(w) => {
                let mut acc: Option<usize> = None;
                for x in w.letters() {
                    let i: usize = x.as_str()[1..].parse().expect("letters are a1..ak");
                    let block = ((1u64 << p) - 1) << ((i - 1) * p);
                    let g = inst.element_with_mask(block).expect("blocks are generators");
                    acc = Some(acc.map_or(g, |y| t.mul(y, g)));
                }
                acc.expect("nonempty word")
            }
            _ => inst.zero,
        })
        .collect();
    ElementMap::new(images, t.size())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_reconstructions() {
        let r1 = reconstruct_sc_star(1).unwrap();
        assert!(r1.passed(), "{r1:?}");
        assert_eq!(r1.quotient_size, 2);
        let r2 = reconstruct_sc_star(2).unwrap();
        assert!(r2.passed());
        assert_eq!(r2.generated_size, 8);
        assert_eq!(
            r2.generator_images,
            vec![("a1".to_string(), "(a,1)".to_string()), ("a2".to_string(), "(1,a)".to_string())]
        );
        assert!(reconstruct_sc_star(0).is_err());
        assert!(reconstruct_sc_star(7).is_err());
    }

    #[test]
    fn embeddings() {
        let e = embed_sc_star_in_a(3, 2).unwrap();
        assert!(e.passed(), "{e:?}");
        assert_eq!(e.image_size, 8);
        assert_eq!(e.generator_images[1], ("a2".to_string(), "a3a4".to_string()));
        let id = embed_sc_star_in_a(3, 1).unwrap();
        assert!(id.passed());
        assert_eq!(id.map.images().len(), 8);
        assert!((0..8).all(|x| id.map.apply(x) == x));
    }
}
