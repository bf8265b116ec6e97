//! Quasi-order combinators: componentwise products, sequence embedding,
//! finite-basis extraction, and tail detection for decreasing sequences.
//!
//! The orders here are plain comparison callbacks; nothing enforces that a
//! given order really is a well-quasi-order. What the rest of the crate
//! relies on (and what the test suite demonstrates empirically) is that
//! basis extraction under such orders stabilizes on finite data.

use crate::error::{Error, Result};

/// A reflexive, transitive comparison. Implementations must be pure.
pub trait QuasiOrder<T: ?Sized> {
    fn leq(&self, a: &T, b: &T) -> bool;

    fn equivalent(&self, a: &T, b: &T) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }
}

/// The natural order of any `Ord` type.
#[derive(Debug, Clone, Copy, Default)]
pub struct OrdLeq;

impl<T: Ord> QuasiOrder<T> for OrdLeq {
    fn leq(&self, a: &T, b: &T) -> bool {
        a <= b
    }
}

/// An order given by a closure.
pub struct FnLeq<F>(pub F);

impl<T, F: Fn(&T, &T) -> bool> QuasiOrder<T> for FnLeq<F> {
    fn leq(&self, a: &T, b: &T) -> bool {
        (self.0)(a, b)
    }
}

/// Pairs compared componentwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProductLeq<A, B>(pub A, pub B);

/// The product quasi-order of two orders.
pub fn product<A, B>(a: A, b: B) -> ProductLeq<A, B> {
    ProductLeq(a, b)
}

impl<S, T, A: QuasiOrder<S>, B: QuasiOrder<T>> QuasiOrder<(S, T)> for ProductLeq<A, B> {
    fn leq(&self, a: &(S, T), b: &(S, T)) -> bool {
        self.0.leq(&a.0, &b.0) && self.1.leq(&a.1, &b.1)
    }
}

/// Equal-length slices compared componentwise; the n-fold product order.
/// Slices of different lengths are incomparable.
#[derive(Debug, Clone, Copy, Default)]
pub struct PointwiseLeq<O>(pub O);

impl<T, O: QuasiOrder<T>> QuasiOrder<[T]> for PointwiseLeq<O> {
    fn leq(&self, a: &[T], b: &[T]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.0.leq(x, y))
    }
}

impl<T, O: QuasiOrder<T>> QuasiOrder<Vec<T>> for PointwiseLeq<O> {
    fn leq(&self, a: &Vec<T>, b: &Vec<T>) -> bool {
        QuasiOrder::<[T]>::leq(self, a.as_slice(), b.as_slice())
    }
}

/// Proof that one sequence embeds into another: a strictly increasing map
/// of positions with each element dominated by its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingWitness {
    /// `mapping[i]` is the 0-based position in the longer sequence matched
    /// to position `i` of the shorter one.
    pub mapping: Vec<usize>,
}

/// Sequence embedding order: does `x` embed into `y` as a subsequence with
/// every element dominated under `base`?
///
/// Greedy leftmost matching is exact here: if any embedding exists, one
/// exists whose images are the leftmost admissible positions (exchange a
/// non-leftmost image for the leftmost one; later images only gain room).
pub fn higman_leq<T>(
    x: &[T],
    y: &[T],
    base: &impl QuasiOrder<T>,
) -> Option<EmbeddingWitness> {
    let mut mapping = Vec::with_capacity(x.len());
    let mut j = 0;
    for item in x {
        loop {
            if j >= y.len() {
                return None;
            }
            if base.leq(item, &y[j]) {
                mapping.push(j);
                j += 1;
                break;
            }
            j += 1;
        }
    }
    Some(EmbeddingWitness { mapping })
}

/// The embedding order packaged as a `QuasiOrder` over sequences.
#[derive(Debug, Clone, Copy, Default)]
pub struct HigmanLeq<O>(pub O);

impl<T, O: QuasiOrder<T>> QuasiOrder<Vec<T>> for HigmanLeq<O> {
    fn leq(&self, a: &Vec<T>, b: &Vec<T>) -> bool {
        higman_leq(a, b, &self.0).is_some()
    }
}

/// Streaming extraction of the minimal elements seen so far. Under a wqo
/// the basis stabilizes: from some point on every new element dominates a
/// basis member and is absorbed.
#[derive(Debug, Clone)]
pub struct BasisState<T, O> {
    order: O,
    basis: Vec<T>,
    seen: usize,
    last_change: Option<usize>,
}

impl<T, O: QuasiOrder<T>> BasisState<T, O> {
    pub fn new(order: O) -> Self {
        BasisState {
            order,
            basis: Vec::new(),
            seen: 0,
            last_change: None,
        }
    }

    /// Feed one element. Returns `true` when the element was absorbed
    /// (some basis element is already below it). Otherwise the element
    /// joins the basis and every strictly larger basis element is evicted.
    /// Ties keep the first-inserted representative.
    pub fn insert(&mut self, element: T) -> bool {
        let index = self.seen;
        self.seen += 1;
        if self.basis.iter().any(|b| self.order.leq(b, &element)) {
            return true;
        }
        self.basis.retain(|b| !self.order.leq(&element, b));
        self.basis.push(element);
        self.last_change = Some(index);
        false
    }

    /// The current antichain of minimal representatives.
    pub fn basis(&self) -> &[T] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<T> {
        self.basis
    }

    pub fn seen_count(&self) -> usize {
        self.seen
    }

    /// Stream index of the last insertion that changed the basis.
    pub fn last_change_index(&self) -> Option<usize> {
        self.last_change
    }
}

/// For a decreasing sequence, the first index equivalent to the final
/// element: the visible tail of the stabilized suffix.
pub fn tail_index<T>(seq: &[T], order: &impl QuasiOrder<T>) -> Result<usize> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    for i in 1..seq.len() {
        if !order.leq(&seq[i], &seq[i - 1]) {
            return Err(Error::NotDecreasing(i));
        }
    }
    let last = &seq[seq.len() - 1];
    // The sequence decreases, so seq[k] >= last always holds; equivalence
    // reduces to seq[k] <= last.
    let k = seq
        .iter()
        .position(|x| order.leq(x, last))
        .expect("the last element is equivalent to itself");
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_componentwise() {
        let ord = product(OrdLeq, OrdLeq);
        assert!(ord.leq(&(1u64, 2u64), &(1, 2)));
        assert!(!ord.leq(&(1, 3), &(2, 2)));
        assert!(ord.leq(&(1, 2), &(2, 3)));
    }

    #[test]
    fn pointwise_matches_vector_order() {
        let ord = PointwiseLeq(OrdLeq);
        assert!(ord.leq(&vec![1u64, 2, 3], &vec![1, 2, 3]));
        assert!(ord.leq(&vec![0u64, 1], &vec![1, 1]));
        assert!(!ord.leq(&vec![2u64, 0], &vec![1, 1]));
        assert!(!ord.leq(&vec![1u64], &vec![1, 1]));
    }

    #[test]
    fn higman_examples() {
        let w = higman_leq::<u64>(&[], &[5, 6], &OrdLeq).unwrap();
        assert!(w.mapping.is_empty());

        let w = higman_leq(&[2u64, 1], &[3, 0, 2], &OrdLeq).unwrap();
        assert_eq!(w.mapping, vec![0, 2]);

        assert!(higman_leq(&[1u64, 1], &[0, 1], &OrdLeq).is_none());
    }

    /// Exhaustive embedding search; the oracle the greedy matcher is
    /// checked against.
    fn embeds_exhaustive(x: &[u64], y: &[u64]) -> bool {
        fn go(x: &[u64], y: &[u64]) -> bool {
            if x.is_empty() {
                return true;
            }
            if y.is_empty() {
                return false;
            }
            (x[0] <= y[0] && go(&x[1..], &y[1..])) || go(x, &y[1..])
        }
        go(x, y)
    }

    #[test]
    fn greedy_agrees_with_exhaustive_search() {
        // All sequence pairs with lengths <= 4 over {0,..,3} (sampled
        // systematically via counters).
        fn seqs(max_len: usize) -> Vec<Vec<u64>> {
            let mut out = vec![vec![]];
            let mut level = vec![vec![]];
            for _ in 0..max_len {
                let mut next = Vec::new();
                for s in &level {
                    for v in 0..4u64 {
                        let mut t: Vec<u64> = s.clone();
                        t.push(v);
                        next.push(t);
                    }
                }
                out.extend(next.iter().cloned());
                level = next;
            }
            out
        }
        let pool = seqs(3);
        for x in &pool {
            for y in &pool {
                let greedy = higman_leq(x, y, &OrdLeq).is_some();
                assert_eq!(greedy, embeds_exhaustive(x, y), "x={x:?} y={y:?}");
            }
        }
    }

    #[test]
    fn witness_is_valid_and_increasing() {
        let x = vec![1u64, 0, 2];
        let y = vec![2u64, 1, 0, 0, 3];
        let w = higman_leq(&x, &y, &OrdLeq).unwrap();
        for pair in w.mapping.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for (i, &j) in w.mapping.iter().enumerate() {
            assert!(x[i] <= y[j]);
        }
    }

    #[test]
    fn basis_keeps_minimal_elements() {
        let mut st = BasisState::new(OrdLeq);
        assert!(!st.insert(3u64));
        assert!(st.insert(5)); // absorbed by 3
        assert_eq!(st.basis(), &[3]);
        assert!(!st.insert(2)); // evicts 3
        assert_eq!(st.basis(), &[2]);
        assert_eq!(st.seen_count(), 3);
        assert_eq!(st.last_change_index(), Some(2));
    }

    #[test]
    fn basis_stream_stabilizes_in_n3() {
        // Deterministic pseudo-random stream of points in N^3.
        let ord = PointwiseLeq(OrdLeq);
        let mut st = BasisState::new(ord);
        let mut x: u64 = 0x9E3779B97F4A7C15;
        let mut stream = Vec::new();
        for _ in 0..1000 {
            let mut point = Vec::with_capacity(3);
            for _ in 0..3 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                point.push((x >> 33) % 21);
            }
            stream.push(point);
        }
        for p in &stream {
            st.insert(p.clone());
        }
        let last = st.last_change_index().unwrap();
        assert!(last < 999, "basis should stabilize before the stream ends");
        // The final basis is an antichain...
        let ord = PointwiseLeq(OrdLeq);
        let basis = st.basis();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if i != j {
                    assert!(!ord.leq(a, b), "basis not an antichain");
                }
            }
        }
        // ...and every stream element dominates some basis member.
        for p in &stream {
            assert!(basis.iter().any(|b| ord.leq(b, p)));
        }
    }

    #[test]
    fn tail_of_decreasing_sequence() {
        assert_eq!(tail_index(&[5u64, 3, 3, 3], &OrdLeq).unwrap(), 1);
        assert_eq!(tail_index(&[4u64, 4, 4], &OrdLeq).unwrap(), 0);
        assert_eq!(tail_index(&[7u64], &OrdLeq).unwrap(), 0);
        assert!(matches!(
            tail_index(&[1u64, 2], &OrdLeq),
            Err(Error::NotDecreasing(1))
        ));
        assert!(matches!(
            tail_index::<u64>(&[], &OrdLeq),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn higman_is_reflexive_and_transitive() {
        let ord = HigmanLeq(OrdLeq);
        let seqs: Vec<Vec<u64>> = vec![
            vec![],
            vec![1],
            vec![2, 0],
            vec![1, 2, 1],
            vec![0, 3, 0, 2],
        ];
        for s in &seqs {
            assert!(ord.leq(s, s));
        }
        for a in &seqs {
            for b in &seqs {
                for c in &seqs {
                    if ord.leq(a, b) && ord.leq(b, c) {
                        assert!(ord.leq(a, c), "transitivity {a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn witness_composition() {
        let x = vec![1u64, 2];
        let y = vec![1u64, 0, 3];
        let z = vec![2u64, 2, 1, 4];
        let w1 = higman_leq(&x, &y, &OrdLeq).unwrap();
        let w2 = higman_leq(&y, &z, &OrdLeq).unwrap();
        // Composing witnesses stays strictly increasing and dominating.
        let composed: Vec<usize> = w1.mapping.iter().map(|&i| w2.mapping[i]).collect();
        for pair in composed.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for (i, &j) in composed.iter().enumerate() {
            assert!(x[i] <= z[j]);
        }
    }
}
