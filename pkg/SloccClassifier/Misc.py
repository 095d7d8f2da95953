import traceback


def exceptionToStr(e: BaseException) -> str:
    """ Type, message and stack trace of an exception as a block of text for the log. """
    stackTrace = ''
    for frame in traceback.extract_tb(e.__traceback__):
        stackTrace += 'File : %s , Line : %d, Func.Name : %s, Message : %s\n' % (
            frame.filename, frame.lineno, frame.name, frame.line)

    eStr = ''
    eStr += 'Exception type : %s\n' % type(e).__name__
    eStr += 'Exception message : %s\n' % e
    eStr += 'Stack trace : %s\n' % stackTrace
    return eStr
