use ga_lrpc::kem::{self, code_syndrome, decap_syndrome, validate_keypair};
use ga_lrpc::{Ciphertext, Error, Field, FormatError, GroupDescriptor, KemParams, PublicKey, SecretKey};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn acceptance_params() -> KemParams {
    KemParams::new(Field::preset(2, 31).unwrap(), GroupDescriptor::dihedral(7).unwrap(), 3, 2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn decap_syndrome_is_code_syndrome(seed in any::<u64>()) {
        let params = acceptance_params();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (pk, sk) = kem::keygen(&params, &mut rng).unwrap();
        let enc = kem::encap_detailed(&pk, &mut rng).unwrap();
        let s = decap_syndrome(&sk, &enc.ciphertext).unwrap();
        prop_assert_eq!(&s, &code_syndrome(&sk, &enc.e1, &enc.e2).unwrap());
        let ef = enc.support.product(sk.support()).unwrap();
        prop_assert!(s.coords().iter().all(|c| ef.contains(c)));
        match kem::decap(&sk, &enc.ciphertext) {
            Ok(k) => prop_assert_eq!(k, enc.key),
            Err(e) => prop_assert_eq!(e, Error::DecapFailure),
        }
    }

    #[test]
    fn wire_round_trip(seed in any::<u64>()) {
        let params = acceptance_params();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (pk, sk) = kem::keygen(&params, &mut rng).unwrap();
        let (ct, _) = kem::encap(&pk, &mut rng).unwrap();
        prop_assert_eq!(PublicKey::from_bytes(&pk.to_bytes()).unwrap(), pk.clone());
        prop_assert_eq!(SecretKey::from_bytes(&sk.to_bytes()).unwrap(), sk.clone());
        prop_assert_eq!(Ciphertext::from_bytes(&ct.to_bytes()).unwrap(), ct.clone());
        prop_assert_eq!(PublicKey::from_bytes(&pk.to_bytes()).unwrap().to_bytes(), pk.to_bytes());
    }
}

#[test]
fn all_three_algorithms_are_deterministic() {
    let params = acceptance_params();
    let run = || {
        let mut rng = ChaCha20Rng::seed_from_u64(77);
        let (pk, sk) = kem::keygen(&params, &mut rng).unwrap();
        let (ct, key) = kem::encap(&pk, &mut rng).unwrap();
        (pk.to_bytes(), sk.to_bytes(), ct.to_bytes(), key, kem::decap(&sk, &ct))
    };
    assert_eq!(run(), run());
}

#[test]
fn tampered_ciphertexts_rarely_yield_the_key() {
    let params = acceptance_params();
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    let (pk, sk) = kem::keygen(&params, &mut rng).unwrap();
    let mut matches = 0;
    for _ in 0..200 {
        let enc = kem::encap_detailed(&pk, &mut rng).unwrap();
        let mut coords = enc.ciphertext.c().coords().to_vec();
        let i = rng.random_range(0..coords.len());
        let delta = params.field().sample_nonzero(&mut rng);
        coords[i] = params.field().add(&coords[i], &delta);
        let c = params.algebra().element(coords).unwrap();
        let tampered = Ciphertext::new(params.clone(), c).unwrap();
        if kem::decap(&sk, &tampered) == Ok(enc.key) {
            matches += 1;
        }
    }
    assert!(matches <= 2, "{matches} tampered ciphertexts decapsulated to the real key");
}

#[test]
fn mismatched_secret_key_is_structurally_valid_but_fails_validation() {
    let params = acceptance_params();
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let (pk, _) = kem::keygen(&params, &mut rng).unwrap();
    let (pk2, other) = kem::keygen(&params, &mut rng).unwrap();
    let bytes = other.to_bytes();
    assert!(SecretKey::from_bytes(&bytes).is_ok());
    assert!(validate_keypair(&pk, &other).is_err());
    assert!(validate_keypair(&pk2, &other).is_ok());
}

#[test]
fn corrupted_headers_give_dedicated_errors() {
    let params = acceptance_params();
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let (pk, sk) = kem::keygen(&params, &mut rng).unwrap();
    let (ct, _) = kem::encap(&pk, &mut rng).unwrap();

    let mut bad = pk.to_bytes();
    bad[0] = b'X';
    assert_eq!(PublicKey::from_bytes(&bad), Err(FormatError::BadMagic));

    let mut bad = ct.to_bytes();
    bad[4] = 9;
    assert_eq!(Ciphertext::from_bytes(&bad), Err(FormatError::UnsupportedVersion(9)));

    let bytes = sk.to_bytes();
    assert!(matches!(SecretKey::from_bytes(&bytes[..bytes.len() - 3]), Err(FormatError::Truncated { needed: 3 })));
    let mut long = ct.to_bytes();
    long.push(0);
    assert_eq!(Ciphertext::from_bytes(&long), Err(FormatError::TrailingBytes(1)));

    assert!(matches!(Ciphertext::from_bytes(&pk.to_bytes()), Err(FormatError::WrongKind { .. })));

    let mut bad = ct.to_bytes();
    let last = bad.len() - 1;
    bad[last] = 2;
    assert!(matches!(Ciphertext::from_bytes(&bad), Err(FormatError::CoefficientOutOfRange { value: 2, q: 2 })));

    // A secret key whose stored support disagrees with x, y.
    let mut bad = sk.to_bytes();
    let last = bad.len() - 1;
    bad[last] ^= 1;
    assert!(SecretKey::from_bytes(&bad).is_err());
}

#[test]
fn custom_group_keys_travel_with_their_table() {
    let q8 = "n=8
e a a2 a3 b ab a2b a3b
1 2 3 4 5 6 7 8
2 3 4 1 6 7 8 5
3 4 1 2 7 8 5 6
4 1 2 3 8 5 6 7
5 8 7 6 3 2 1 4
6 5 8 7 4 3 2 1
7 6 5 8 1 4 3 2
8 7 6 5 2 1 4 3";
    let g = GroupDescriptor::from_cayley_text(q8).unwrap();
    assert!(!g.is_abelian());
    assert_eq!(g.mul(4, 4), 2, "b^2 = a^2, so this is not dihedral");
    let params = KemParams::new(Field::preset(2, 13).unwrap(), g, 2, 2).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let (pk, sk) = kem::keygen(&params, &mut rng).unwrap();
    let pk2 = PublicKey::from_bytes(&pk.to_bytes()).unwrap();
    assert_eq!(pk2.params().group(), params.group());
    let (ct, key) = kem::encap(&pk2, &mut rng).unwrap();
    let sk2 = SecretKey::from_bytes(&sk.to_bytes()).unwrap();
    match kem::decap(&sk2, &Ciphertext::from_bytes(&ct.to_bytes()).unwrap()) {
        Ok(k) => assert_eq!(k, key),
        Err(e) => assert_eq!(e, Error::DecapFailure),
    }
}
