use exlie::rootsystem::*;
use exlie::tensorbasis::*;

fn main() {
    let roots = RootSystem::build(Algebra::G2);
    let sols = solve_labels(&roots).unwrap();
    println!("{} solutions", sols.len());
    for s in &sols {
        println!(
            "swapped={} fifth={:?} sign={} assignment={:?}",
            s.swapped, s.fifth_pair, s.fifth_sign, s.assignment
        );
    }
}
