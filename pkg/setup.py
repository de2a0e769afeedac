from setuptools import setup

setup(
    name="pyweil",
    version="0.1.0",
    packages=["pyweil"],
    url="",
    license="MIT",
    author="",
    author_email="",
    description="p-adic Weil algebras, Weil bundles and infinitesimal points of formal groups",
    install_requires=["numpy>=1.16.0", "numba>=0.39.0", "scipy>=1.1.0", "typing>=3.6.4"],
    extras_require={"test": ["pytest>=3.6.0"]},
    entry_points={"console_scripts": ["pyweil=pyweil.cli:main"]},
)
