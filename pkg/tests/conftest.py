from hypothesis import settings
from hypothesis import strategies as st

from episturmian.subst import NormalForm, Permutation, mu
from episturmian.words import SLetter, normalize_oracle

LETTERS = "abcd"

# some examples build long images; wall-clock deadlines only add flakiness
settings.register_profile("default", deadline=None)
settings.load_profile("default")


@st.composite
def alphabets(draw, min_size=1, max_size=4):
    return LETTERS[:draw(st.integers(min_size, max_size))]


@st.composite
def spinned_words(draw, alphabet=None, min_len=0, max_len=12, spins=st.integers(0, 1)):
    alphabet = alphabet or draw(alphabets())
    n = draw(st.integers(min_len, max_len))
    return tuple(SLetter(draw(st.sampled_from(alphabet)), draw(spins)) for _ in range(n))


# mostly barred letters: powers of such words usually carry errors
MOSTLY_BARRED = st.sampled_from([0, 1, 1, 1])


@st.composite
def permutations(draw, alphabet):
    images = draw(st.permutations(list(alphabet)))
    return Permutation.from_mapping(dict(zip(alphabet, images)))


@st.composite
def normal_forms(draw, max_len=8, min_len=0, min_alpha=1, max_alpha=4, spins=st.integers(0, 1)):
    alphabet = draw(alphabets(min_alpha, max_alpha))
    word = draw(spinned_words(alphabet, min_len, max_len, spins))
    return NormalForm(normalize_oracle(word), draw(permutations(alphabet)), tuple(alphabet))


@st.composite
def generator_words(draw, alphabet, max_letters=5, min_letters=0):
    tokens = []
    for _ in range(draw(st.integers(min_letters, max_letters))):
        tokens.append(SLetter(draw(st.sampled_from(alphabet)), draw(st.integers(0, 1))))
        if draw(st.booleans()):
            tokens.append(draw(permutations(alphabet)))
    return tokens


@st.composite
def episturmian(draw, alphabet=None, max_letters=5, min_letters=0):
    alphabet = alphabet or draw(alphabets(2, 4))
    return mu(draw(generator_words(alphabet, max_letters, min_letters)), alphabet)


def random_normal_form(rng, max_len=8, max_alpha=4, min_len=0):
    """Plain-random counterpart of ``normal_forms`` for seeded bulk runs."""
    alphabet = LETTERS[:rng.randint(1, max_alpha)]
    word = tuple(SLetter(rng.choice(alphabet), rng.randint(0, 1))
                 for _ in range(rng.randint(min_len, max_len)))
    images = list(alphabet)
    rng.shuffle(images)
    return NormalForm(normalize_oracle(word), Permutation.from_mapping(dict(zip(alphabet, images))),
                      tuple(alphabet))


def random_generator_word(rng, alphabet, max_letters=5, min_letters=1, perm_rate=0.3):
    tokens = []
    for _ in range(rng.randint(min_letters, max_letters)):
        tokens.append(SLetter(rng.choice(alphabet), rng.randint(0, 1)))
        if rng.random() < perm_rate:
            images = list(alphabet)
            rng.shuffle(images)
            tokens.append(Permutation.from_mapping(dict(zip(alphabet, images))))
    return tokens


def random_episturmian(rng, alphabet, max_letters=5, min_letters=1):
    return mu(random_generator_word(rng, alphabet, max_letters, min_letters), alphabet)


# verdict lines recorded by the acceptance module, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
