use localcodes::group::CodeGroups;
use localcodes::metrics::{barrier_exact, energy_cost, Mode, Target, WalkTrace};
use localcodes::zoo;
use localcodes::{Boundary, Budget, Cell, CodeSpec, Lattice, Letter, PauliOp, Region, Role};
use proptest::prelude::*;

fn boundary() -> impl Strategy<Value = Boundary> {
    prop_oneof![Just(Boundary::Open), Just(Boundary::Periodic)]
}

fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOp> {
    proptest::collection::vec(0u8..4, n).prop_map(move |ls| {
        PauliOp::from_terms(
            n,
            ls.iter().enumerate().map(|(q, &l)| (q, [Letter::I, Letter::X, Letter::Y, Letter::Z][l as usize])),
        )
    })
}

fn zoo_codes() -> Vec<CodeSpec> {
    let mut v = Vec::new();
    for l in 2..=5 {
        v.push(zoo::repetition_1d(l, Boundary::Open).unwrap());
        v.push(zoo::repetition_1d(l, Boundary::Periodic).unwrap());
        v.push(zoo::toric_2d(l).unwrap());
        v.push(zoo::surface_2d(l).unwrap());
        v.push(zoo::bacon_shor_2d(l).unwrap());
    }
    v.push(zoo::generalized_toric(3, 3).unwrap());
    v.push(zoo::generalized_toric(4, 2).unwrap());
    v.push(zoo::heisenberg(1, 5).unwrap());
    v.push(zoo::heisenberg(2, 3).unwrap());
    for n in [1, 3, 5] {
        v.push(zoo::steane_chain(n).unwrap());
    }
    v
}

/// `p` shifted by one site along `axis` on a periodic lattice.
fn translate(code: &CodeSpec, p: &PauliOp, axis: usize) -> PauliOp {
    let layout = code.layout();
    let lat = layout.lattice();
    PauliOp::from_terms(
        code.num_qubits(),
        p.terms().map(|(q, l)| {
            let cell = layout.cell(q);
            let to = lat.shift(*cell.coord(), axis, 1).expect("periodic");
            (layout.index_of(&Cell::from_array(to, lat.dim(), cell.axes())).expect("translated cell exists"), l)
        }),
    )
}

#[test]
fn zoo_codes_are_local_as_declared() {
    for code in zoo_codes() {
        let loc = code.validate_locality().unwrap_or_else(|e| panic!("{}: {e}", code.name()));
        assert!(loc.r_actual <= code.declared_r(), "{}", code.name());
        assert!(loc.max_participation > 0);
    }
}

#[test]
fn barrier_is_even_and_walk_replays() {
    let codes = [
        zoo::toric_2d(2).unwrap(),
        zoo::toric_2d(3).unwrap(),
        zoo::surface_2d(3).unwrap(),
        zoo::bacon_shor_2d(3).unwrap(),
        zoo::heisenberg(1, 5).unwrap(),
        zoo::steane_chain(1).unwrap(),
        zoo::repetition_1d(5, Boundary::Periodic).unwrap(),
    ];
    for code in &codes {
        let groups = CodeGroups::new(code).unwrap();
        let t = Target::new(&groups, &Mode::default_for(code.role())).unwrap();
        let b = barrier_exact(code, &t, &Budget::default()).unwrap().unwrap();
        assert_eq!(b.value % 2, 0, "{}", code.name());
        let n = code.num_qubits();
        let every_single_flagged = (0..n).all(|q| {
            [Letter::X, Letter::Y, Letter::Z].iter().all(|&l| energy_cost(code, &PauliOp::single(n, q, l)) > 0)
        });
        if every_single_flagged {
            assert!(b.value >= 2, "{}", code.name());
        }
        let w = &b.walk;
        assert_eq!(w.profile[0], 0);
        assert_eq!(w.profile.len(), w.steps.len() + 1);
        assert_eq!(w.eps_max, *w.profile.iter().max().unwrap());
        assert!(t.is_target(&w.end));
        assert!(t.syndrome(&w.end).is_zero());
        if code.role() == Role::Stabilizer {
            assert_eq!(energy_cost(code, &w.end), 0);
        }
        let again = WalkTrace::replay(code, w.steps.clone());
        assert_eq!(&again, w);
    }
}

proptest! {
    #[test]
    fn strip_partitions_are_even_covers(l in 2usize..40, r in 2usize..6, dim in 1usize..3, b in boundary()) {
        let lat = Lattice::new(dim, l, b).unwrap();
        let axis = dim - 1;
        match lat.strip_partition(r, axis) {
            Ok(strips) => {
                prop_assert!(l >= 2 * (r - 1) * (r - 1));
                prop_assert_eq!(strips.len() % 2, 0);
                let mut covered = lat.empty_region();
                let mut next = 0;
                for s in &strips {
                    prop_assert!(s.width == r || s.width == r - 1);
                    prop_assert_eq!(s.start, next);
                    next += s.width;
                    prop_assert!(covered.intersection(&s.region).unwrap().is_empty());
                    covered = covered.union(&s.region).unwrap();
                }
                prop_assert_eq!(next, l);
                prop_assert_eq!(covered.len(), lat.num_sites());
            }
            Err(_) => prop_assert!(l < 2 * (r - 1) * (r - 1)),
        }
    }

    #[test]
    fn shell_avoids_region(l in 2usize..8, dim in 1usize..4, b in boundary(), r in 1usize..4, seed in any::<u64>()) {
        prop_assume!(l.pow(dim as u32) <= 400);
        let lat = Lattice::new(dim, l, b).unwrap();
        let m = Region::from_sites(&lat, (0..lat.num_sites()).filter(|&s| (seed >> (s % 64)) & 1 == 1)).unwrap();
        let shell = m.boundary_shell(r);
        prop_assert!(shell.intersection(&m).unwrap().is_empty());
    }

    #[test]
    fn extents_bounded_and_translation_invariant(p in arb_pauli(32), axis in 0usize..2) {
        let code = zoo::toric_2d(4).unwrap();
        let layout = code.layout();
        let e = layout.bounding_extent(&p, axis).unwrap();
        prop_assert!(e <= 4);
        prop_assert_eq!(e == 0, p.is_identity());
        for shift_axis in 0..2 {
            let q = translate(&code, &p, shift_axis);
            prop_assert_eq!(layout.bounding_extent(&q, axis).unwrap(), e);
        }
    }

    #[test]
    fn syndrome_and_class_are_linear(p in arb_pauli(18), q in arb_pauli(18)) {
        let code = zoo::toric_2d(3).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let t = Target::new(&groups, &Mode::Stabilizer).unwrap();
        let pq = p.multiply(&q).unwrap();
        prop_assert_eq!(t.syndrome(&pq), t.syndrome(&p).xor(&t.syndrome(&q)));
        prop_assert_eq!(t.class(&pq), t.class(&p).xor(&t.class(&q)));
        prop_assert!(energy_cost(&code, &pq) <= energy_cost(&code, &p) + energy_cost(&code, &q));
    }
}
