//! The sequential fallback gives the same answers as the pool. Kept in its
//! own binary because the switch is process-wide.

use ncgeom::free_assoc::GeneratorSet;
use ncgeom::graded::degrees_up_to;
use ncgeom::nc_forms::StarForms;
use ncgeom::par;
use ncgeom::pbw_star::pbw_check;

#[test]
fn sequential_and_parallel_agree() {
    let run = || {
        let pbw = pbw_check(&GeneratorSet::standard(2), 5);
        let f = StarForms::new(&GeneratorSet::laurent(2), 1).unwrap();
        let hodge: Vec<_> = degrees_up_to(2, 2)
            .iter()
            .map(|c| f.mod_commutators(c, 3).unwrap().cohomology_dims())
            .collect();
        (pbw, hodge)
    };
    par::set_sequential(false);
    let a = run();
    par::set_sequential(true);
    assert!(!par::is_parallel());
    let b = run();
    par::set_sequential(false);
    assert_eq!(a, b);
}
