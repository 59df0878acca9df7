use super::elemset::ElementSet;
use super::group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism between Cayley-table groups, stored as an image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source_order: usize,
    target_order: usize,
    map: Vec<usize>,
}

impl Homomorphism {
    /// Validates `map(xy) = map(x)map(y)` exhaustively.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::Domain("image table has the wrong shape".into()));
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::Domain(format!("not a homomorphism at ({x},{y})")));
                }
            }
        }
        Ok(Homomorphism {
            source_order: source.order(),
            target_order: target.order(),
            map,
        })
    }

    /// Extend generator images to a homomorphism, failing when the
    /// assignment is not well defined.
    pub fn from_generator_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: &[usize],
    ) -> Result<Self> {
        let gens = source.generators();
        if images.len() != gens.len() {
            return Err(Error::Domain("one image per generator is required".into()));
        }
        let mut map = vec![usize::MAX; source.order()];
        map[source.identity()] = target.identity();
        let mut queue = vec![source.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&g, &img) in gens.iter().zip(images) {
                let y = source.mul(x, g);
                let fy = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return Err(Error::Domain("generator images do not define a homomorphism".into()));
                }
            }
            i += 1;
        }
        Ok(Homomorphism {
            source_order: source.order(),
            target_order: target.order(),
            map,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Homomorphism {
            source_order: g.order(),
            target_order: g.order(),
            map: (0..g.order()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn kernel(&self, source: &FiniteGroup, target: &FiniteGroup) -> Subgroup {
        let k: Vec<usize> = (0..self.source_order)
            .filter(|&x| self.map[x] == target.identity())
            .collect();
        source.closure(&k)
    }

    pub fn image(&self, target: &FiniteGroup) -> Subgroup {
        let mut img: Vec<usize> = self.map.clone();
        img.sort_unstable();
        img.dedup();
        target.closure(&img)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = ElementSet::empty(self.target_order);
        for &y in &self.map {
            hit.insert(y);
        }
        hit.len() == self.target_order
    }
}

/// `A × B` with element `(a, b)` encoded as `a·|B| + b` and generators
/// `{(a,1)} ∪ {(1,b)}`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > cap {
        return Err(Error::CapExceeded {
            what: "direct product order",
            size: n,
            cap,
        });
    }
    let mut mult = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            mult.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
        }
    }
    let mut gens: Vec<usize> = a.generators().iter().map(|&g| g * nb + b.identity()).collect();
    gens.extend(b.generators().iter().map(|&g| a.identity() * nb + g));
    let g = FiniteGroup::from_flat(n, mult, gens)?;
    let name = match (a.name(), b.name()) {
        (Some(x), Some(y)) => format!("{x}x{y}"),
        _ => format!("G{na}xG{nb}"),
    };
    Ok(g.with_name(name))
}

/// Coordinate helper for groups built by [`direct_product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductCoords {
    pub a_order: usize,
    pub b_order: usize,
}

impl ProductCoords {
    pub fn new(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        ProductCoords {
            a_order: a.order(),
            b_order: b.order(),
        }
    }

    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.b_order + b
    }

    #[inline]
    pub fn proj_a(&self, x: usize) -> usize {
        x / self.b_order
    }

    #[inline]
    pub fn proj_b(&self, x: usize) -> usize {
        x % self.b_order
    }

    /// `A × {1}` inside the product.
    pub fn factor_a(&self, g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> Subgroup {
        let gens: Vec<usize> = a.generators().iter().map(|&x| self.pair(x, b.identity())).collect();
        g.closure(&gens)
    }

    /// `{1} × B` inside the product.
    pub fn factor_b(&self, g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> Subgroup {
        let gens: Vec<usize> = b.generators().iter().map(|&y| self.pair(a.identity(), y)).collect();
        g.closure(&gens)
    }
}

/// `K/N` on cosets indexed by their smallest member, with the projection.
pub fn quotient(k: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Homomorphism)> {
    if !k.is_subgroup(n) || !k.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let reps = k.left_coset_reps(n);
    let mut coset_of = vec![usize::MAX; k.order()];
    for (ci, &r) in reps.iter().enumerate() {
        for &m in n.elements() {
            coset_of[k.mul(r, m)] = ci;
        }
    }
    let q = reps.len();
    let mut mult = Vec::with_capacity(q * q);
    for &r in &reps {
        for &s in &reps {
            mult.push(coset_of[k.mul(r, s)] as u32);
        }
    }
    let gens = k.generators().iter().map(|&g| coset_of[g]).collect();
    let qg = FiniteGroup::from_flat(q, mult, gens)?;
    let hom = Homomorphism {
        source_order: k.order(),
        target_order: q,
        map: coset_of,
    };
    Ok((qg, hom))
}

/// Fiber product `{(x, y) : q(x) = q(y)} ≤ K × K` of a surjection `q: K → Q`.
#[derive(Clone, Debug)]
pub struct FiberProductData {
    pub product: FiniteGroup,
    pub coords: ProductCoords,
    pub subgroup: Subgroup,
    pub diagonal: Subgroup,
    pub kernel: Subgroup,
    pub index: usize,
    /// Present when `ker q` is central: the fiber product as a group, `ker q`
    /// as a group, and the surjection `(x, y) ↦ x y⁻¹` whose kernel is the
    /// diagonal.
    pub central_surjection: Option<(FiniteGroup, FiniteGroup, Homomorphism)>,
}

pub fn fiber_product(
    k: &FiniteGroup,
    target: &FiniteGroup,
    q: &Homomorphism,
    cap: usize,
) -> Result<FiberProductData> {
    if !q.is_surjective() || q.target_order() != target.order() {
        return Err(Error::NotSurjective);
    }
    let product = direct_product(k, k, cap)?;
    let coords = ProductCoords::new(k, k);
    let n = k.order();
    let kernel = q.kernel(k, target);
    let mut seeds: Vec<usize> = k.generators().iter().map(|&x| coords.pair(x, x)).collect();
    seeds.extend(kernel.generators().iter().map(|&x| coords.pair(x, k.identity())));
    let subgroup = product.closure(&seeds);
    debug_assert!(subgroup
        .elements()
        .iter()
        .all(|&z| q.apply(coords.proj_a(z)) == q.apply(coords.proj_b(z))));
    let members = (0..n * n)
        .filter(|&z| q.apply(coords.proj_a(z)) == q.apply(coords.proj_b(z)))
        .count();
    if members != subgroup.order() {
        return Err(Error::Domain("fiber product generators do not generate the fiber product".into()));
    }
    let diag: Vec<usize> = k.generators().iter().map(|&x| coords.pair(x, x)).collect();
    let diagonal = product.closure(&diag);
    let index = product.order() / subgroup.order();

    let central = kernel
        .elements()
        .iter()
        .all(|&z| (0..n).all(|x| k.mul(x, z) == k.mul(z, x)));
    let central_surjection = if central {
        let (fp_group, fp_emb) = product.subgroup_group(&subgroup);
        let (ker_group, ker_emb) = k.subgroup_group(&kernel);
        let mut pos = vec![usize::MAX; n];
        for (i, &e) in ker_emb.iter().enumerate() {
            pos[e] = i;
        }
        let map: Vec<usize> = fp_emb
            .iter()
            .map(|&z| pos[k.mul(coords.proj_a(z), k.inv(coords.proj_b(z)))])
            .collect();
        let hom = Homomorphism::new(&fp_group, &ker_group, map)?;
        Some((fp_group, ker_group, hom))
    } else {
        None
    };
    Ok(FiberProductData {
        product,
        coords,
        subgroup,
        diagonal,
        kernel,
        index,
        central_surjection,
    })
}
