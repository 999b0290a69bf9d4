"""Regenerate corpus/travis_only and corpus/gha_only.

The single-dialect sets are assembled from a few project profiles (Maven,
Gradle, Python, Node) with seeded variation, so they share the skeletons a
frequent-tree miner should find while still differing file to file.

    python3 corpus/build_single_tool.py
"""
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
COUNT = 24

JDKS = ["8", "11", "17"]
PYTHONS = ["3.8", "3.9", "3.10", "3.11"]
NODES = ["16", "18", "20"]

PROFILES = {
    "maven": {
        "travis_lang": "java",
        "install": ["mvn install -DskipTests=true -B", "mvn dependency:resolve"],
        "script": ["mvn test -B", "mvn verify", "mvn package -B", "mvn clean verify"],
    },
    "gradle": {
        "travis_lang": "java",
        "install": ["chmod +x gradlew"],
        "script": ["./gradlew build", "./gradlew check", "./gradlew test --info"],
    },
    "python": {
        "travis_lang": "python",
        "install": ["pip install -r requirements.txt", "pip install -e ."],
        "script": ["pytest", "pytest -q tests", "python -m pytest"],
    },
    "node": {
        "travis_lang": "node_js",
        "install": ["npm ci", "npm install"],
        "script": ["npm test", "npm run build", "npm run lint"],
    },
}
ORDER = ["maven", "gradle", "python", "node"]


def travis(i, rng):
    kind = ORDER[i % len(ORDER)]
    prof = PROFILES[kind]
    lines = [f"language: {prof['travis_lang']}"]
    if kind in ("maven", "gradle"):
        lines += ["jdk:", f"  - openjdk{rng.choice(JDKS)}"]
    elif kind == "python":
        lines += ["python:"] + [f'  - "{v}"' for v in sorted(rng.sample(PYTHONS, rng.randint(1, 2)))]
    else:
        lines += ["node_js:", f'  - "{rng.choice(NODES)}"']
    if rng.random() < 0.3:
        lines.append("dist: focal")
    if kind == "gradle":
        lines += ["before_install:", "  - chmod +x gradlew"]
    elif rng.random() < 0.6:
        lines += ["install:", f"  - {rng.choice(prof['install'])}"]
    lines.append("script:")
    for cmd in rng.sample(prof["script"], rng.randint(1, 2)):
        lines.append(f"  - {cmd}")
    if kind == "maven" and rng.random() < 0.5:
        lines += ["cache:", "  directories:", "    - $HOME/.m2"]
    if rng.random() < 0.3:
        lines += ["notifications:", "  email: false"]
    if rng.random() < 0.25:
        lines += ["branches:", "  only:", "    - master"]
    return "\n".join(lines) + "\n"


def gha(i, rng):
    kind = ORDER[i % len(ORDER)]
    prof = PROFILES[kind]
    name = "CI" if rng.random() < 0.75 else f"{kind.capitalize()} build"
    lines = [f"name: {name}"]
    if rng.random() < 0.7:
        lines.append("on: [push, pull_request]")
    else:
        lines += ["on:", "  push:", "    branches: [main]", "  pull_request:"]
    lines += ["jobs:", "  build:", "    runs-on: ubuntu-latest", "    steps:", "      - uses: actions/checkout@v4"]
    if kind in ("maven", "gradle"):
        setup = ["      - name: Set up JDK", "        uses: actions/setup-java@v4", "        with:",
                 f"          java-version: '{rng.choice(JDKS)}'", "          distribution: temurin"]
        if rng.random() < 0.5:
            setup.append(f"          cache: {kind}")
    elif kind == "python":
        setup = ["      - name: Set up Python", "        uses: actions/setup-python@v5", "        with:",
                 f"          python-version: '{rng.choice(PYTHONS)}'"]
    else:
        setup = ["      - uses: actions/setup-node@v4", "        with:", f"          node-version: '{rng.choice(NODES)}'"]
    if rng.random() < 0.3 and setup[0].startswith("      - name:"):
        setup = ["      - uses:" + setup[1].split("uses:")[1]] + setup[2:]
    lines += setup
    steps = []
    if kind == "gradle" or rng.random() < 0.6:
        steps.append(rng.choice(prof["install"]))
    steps += rng.sample(prof["script"], rng.randint(1, 2))
    lines += [f"      - run: {cmd}" for cmd in steps]
    return "\n".join(lines) + "\n"


def main():
    for folder, make, name in (("travis_only", travis, "{:02d}.travis.yml"), ("gha_only", gha, "{:02d}.yml")):
        path = os.path.join(HERE, folder)
        os.makedirs(path, exist_ok=True)
        rng = random.Random(folder)
        for i in range(COUNT):
            with open(os.path.join(path, name.format(i + 1)), "w", encoding="utf-8") as fh:
                fh.write(make(i, rng))


if __name__ == "__main__":
    main()
