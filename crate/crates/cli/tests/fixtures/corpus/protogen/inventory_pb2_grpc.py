import grpc


class InventoryServicer(object):
    """Missing associated documentation comment in .proto file"""

    def ListItems(self, request, context):
        """Missing associated documentation comment in .proto file"""
        context.set_code(grpc.StatusCode.UNIMPLEMENTED)
        raise NotImplementedError('Missing associated documentation comment in .proto file')

    def GetItem(self, request, context):
        """Missing associated documentation comment in .proto file"""
        context.set_code(grpc.StatusCode.UNIMPLEMENTED)
        raise NotImplementedError('Missing associated documentation comment in .proto file')

    def DeleteItem(self, request, context):
        """Missing associated documentation comment in .proto file"""
        context.set_code(grpc.StatusCode.UNIMPLEMENTED)
        raise NotImplementedError('Missing associated documentation comment in .proto file')


class InventoryStub(object):

    def __init__(self, channel):
        """Constructor.

        Args:
            channel: A grpc.Channel.
        """
        self.channel = channel
