fn main() {
    println!("exlie");
}
