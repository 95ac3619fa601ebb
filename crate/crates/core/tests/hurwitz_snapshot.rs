use monolab::hurwitz::{
    orbit_explore, orbit_explore_with_jobs, same_orbit, ExploreVerdict, ModFactorization, Move, QuotientConfig, Verdict,
};
use monolab::scenarios::{mck, twisted_mck};
use monolab::word::Direction;
use monolab::Genus;

fn reduced(word: &monolab::Word, m: u64) -> ModFactorization {
    ModFactorization::from_word(word, QuotientConfig::new(m, Genus(4)).unwrap()).unwrap()
}

#[test]
fn mck2_mod3_snapshot() {
    let orbit = orbit_explore(&reduced(&mck(2).unwrap().word(), 3), 100_000).unwrap();
    let r = &orbit.report;
    assert_eq!(r.verdict, ExploreVerdict::Unknown);
    assert_eq!((r.explored, r.levels, r.letters), (100_000, 5, 12));
    assert_eq!(r.digest, "329f1d85f72cbd7381266e7f0a287a826b47c73bd673e750da4d71f810ec7568");
}

#[test]
fn exploration_ignores_thread_count() {
    let f = reduced(&mck(2).unwrap().word(), 3);
    let one = orbit_explore_with_jobs(&f, 20_000, 1).unwrap();
    let four = orbit_explore_with_jobs(&f, 20_000, 4).unwrap();
    assert_eq!(one.report, four.report);
    assert_eq!(one.states, four.states);
}

#[test]
fn scrambled_copy_is_found_with_a_replayable_witness() {
    let f = reduced(&mck(2).unwrap().word(), 3);
    let moves = [(3, Direction::Right), (7, Direction::Left), (4, Direction::Right), (10, Direction::Right)];
    let g = f.replay(&moves.map(|(index, dir)| Move { index, dir })).unwrap();
    let c = same_orbit(&f, &g, 50_000).unwrap();
    assert_eq!(c.verdict, Verdict::SameOrbit);
    assert_eq!(f.replay(c.witness.as_ref().unwrap()).unwrap(), g);
}

/// `f` lies in the Torelli group, so twisting does not move any letter's
/// homology class: the mod-m shadow cannot tell the members apart.
#[test]
fn twisted_members_have_identical_shadows() {
    let f0 = reduced(&twisted_mck(2, 0).unwrap().word(), 2);
    let f1 = reduced(&twisted_mck(2, 1).unwrap().word(), 2);
    assert_eq!(f0, f1);
    let c = same_orbit(&f0, &f1, 2_000).unwrap();
    assert_eq!(c.verdict, Verdict::SameOrbit);
    assert_eq!(c.witness.as_deref(), Some(&[][..]));
}
