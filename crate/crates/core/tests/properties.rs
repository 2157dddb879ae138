use ggsp::frames::Frame;
use ggsp::graphon::{GraphonSpec, Signal, SignalSpace};
use ggsp::group::{symmetric_group, Permutation};
use ggsp::gsp::{gft, igft, parseval_defect};
use ggsp::linalg::Matrix;
use ggsp::sampler::sample;
use ggsp::spectral::{cluster_values, eig_sym, InnerProduct};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn symmetric_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |raw| {
        Matrix::from_fn(n, n, |i, j| if i <= j { raw[i * n + j] } else { raw[j * n + i] })
    })
}

fn step_spec() -> impl Strategy<Value = GraphonSpec> {
    (1usize..4).prop_flat_map(|k| {
        (prop::collection::vec(0.0f64..=1.0, k * k), prop::collection::vec(0.1f64..1.0, k)).prop_map(move |(raw, w)| {
            let p = (0..k)
                .map(|i| (0..k).map(|j| raw[i.min(j) * k + i.max(j)]).collect())
                .collect();
            let total: f64 = w.iter().sum();
            let mut measures: Vec<f64> = w.iter().map(|x| x / total).collect();
            let rest: f64 = measures[..k - 1].iter().sum();
            measures[k - 1] = 1.0 - rest;
            GraphonSpec::Step { p, measures }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_and_inverse(a in permutation(5), b in permutation(5), c in permutation(5)) {
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        let ab = a.compose(&b).unwrap();
        for i in 0..5 {
            prop_assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
        prop_assert_eq!(ab.sign(), a.sign() * b.sign());
    }

    #[test]
    fn cycle_notation_round_trips(a in permutation(6)) {
        let text = a.to_string();
        prop_assert_eq!(Permutation::parse_cycles(6, &text).unwrap(), a);
    }

    #[test]
    fn group_tables_agree_with_composition(i in 0usize..24, j in 0usize..24) {
        let g = symmetric_group(4).unwrap();
        let prod = g.element(i).compose(g.element(j)).unwrap();
        prop_assert_eq!(g.element(g.mul(i, j)), &prod);
        prop_assert_eq!(g.index_of(&prod), Some(g.mul(i, j)));
        prop_assert_eq!(g.mul(i, g.inv(i)), g.identity_index());
    }

    #[test]
    fn sampler_replays_bit_exactly(spec in step_spec(), n in 1usize..60, seed in any::<u64>()) {
        let a = sample(&spec, n, seed).unwrap();
        let b = sample(&spec, n, seed).unwrap();
        prop_assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        for (i, j) in a.adjacency.edges() {
            prop_assert!(i < j && j < n);
            prop_assert!(a.adjacency.has_edge(j, i));
        }
        for i in 0..n {
            prop_assert!(!a.adjacency.has_edge(i, i));
        }
    }

    #[test]
    fn clusters_partition_sorted_values(
        raw in prop::collection::vec(-1.0f64..1.0, 0..30),
        dup in prop::collection::vec(0usize..30, 0..10),
        tol in 1e-9f64..1e-2,
    ) {
        let mut values = raw.clone();
        for &d in &dup {
            if let Some(&x) = raw.get(d) {
                values.push(x);
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let clusters = cluster_values(&values, tol).unwrap();
        let mut next = 0;
        for c in &clusters {
            prop_assert_eq!(c.start, next);
            prop_assert!(c.end > c.start);
            for i in c.start + 1..c.end {
                prop_assert!(values[i - 1] - values[i] <= tol);
            }
            next = c.end;
        }
        prop_assert_eq!(next, values.len());
        for w in clusters.windows(2) {
            prop_assert!(values[w[0].end - 1] - values[w[1].start] > tol);
        }
    }

    #[test]
    fn gft_parseval_and_round_trip(m in symmetric_matrix(8), f in prop::collection::vec(-5.0f64..5.0, 8)) {
        let s = eig_sym(&m, &InnerProduct::graph(8)).unwrap();
        let f = Signal::new(f, SignalSpace::Vertices).unwrap();
        prop_assert!(parseval_defect(&s, &f).unwrap() < 1e-8);
        let back = igft(&s, &gft(&s, &f).unwrap()).unwrap();
        for (a, b) in back.values().iter().zip(f.values()) {
            prop_assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn eigenpairs_satisfy_the_equation(m in symmetric_matrix(12)) {
        let s = eig_sym(&m, &InnerProduct::counting(12)).unwrap();
        let scale = m.frobenius_norm().max(1.0);
        for i in 0..12 {
            let v = s.eigenvector(i);
            let mv = m.matvec(v).unwrap();
            for (a, b) in mv.iter().zip(v) {
                prop_assert!((a - s.eigenvalue(i) * b).abs() < 1e-9 * scale);
            }
        }
        prop_assert!(s.gram().max_abs_diff(&Matrix::identity(12)) < 1e-10);
        for w in s.eigenvalues().windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn frame_bounds_hold(
        vectors in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 4), 4..9),
        f in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        let frame = Frame::new(vectors, 4).unwrap();
        let (a, b) = frame.bounds;
        prop_assert!(a <= b);
        // Random vectors span ℝ⁴ almost surely, so the bounds apply to every f.
        prop_assume!(a > 1e-6);
        let sig = Signal::new(f.clone(), SignalSpace::Group).unwrap();
        let energy: f64 = frame.analysis(&sig).unwrap().iter().map(|c| c * c).sum();
        let norm2: f64 = f.iter().map(|x| x * x).sum();
        prop_assert!(energy >= a * norm2 - 1e-9);
        prop_assert!(energy <= b * norm2 + 1e-9);
    }
}
