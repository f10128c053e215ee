from liftcurv.cli import run

run()
