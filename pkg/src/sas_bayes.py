import sys

from _sas_bayes.main import run

__all__ = ["run"]


def main():
    import _sas_bayes.main

    _sas_bayes.main.main(sys.argv)


if __name__ == "__main__":
    main()
