import sys

from src.Controller.CommandLineController import dispatch


def main():
    # On some configurations error traceback is not being displayed
    #     when the program crashes. This is a workaround.
    sys._excepthook = sys.excepthook

    def exception_hook(exctype, value, traceback):
        print(exctype, value, traceback, file=sys.stderr)
        sys._excepthook(exctype, value, traceback)
        sys.exit(1)

    sys.excepthook = exception_hook
    return dispatch(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
